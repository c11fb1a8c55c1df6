#pragma once

#include <string>

#include "gista/mat.hpp"

namespace gista {

// Dense matrix files: header-free rows of comma-separated values (or
// tab-separated for a .tsv path), one row per line, doubles written with 17
// significant digits so write/read round-trips exactly. Writers go through a
// temp file renamed into place, so a failed run leaves no partial output.

Mat read_dense(const std::string& path);

/// read_dense plus a square/symmetry gate: entries with |a_ij - a_ji| within
/// 1e-12 are averaged, anything worse is a hard error.
DenseSym read_symmetric(const std::string& path);

void write_matrix(const std::string& path, const Mat& m);
void write_matrix(const std::string& path, const DenseSym& m);

/// Temp-file-then-rename text write used by all file emitters.
void write_text_atomically(const std::string& path, const std::string& body);

}  // namespace gista
