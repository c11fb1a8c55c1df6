#include "gista/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gista {

namespace {

char delimiter_for(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0 ? '\t' : ',';
}

double parse_cell(const std::string& cell, const std::string& path, int line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
  return v;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_text_atomically(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << body;
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Mat read_dense(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  const char delim = delimiter_for(path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, delim)) row.push_back(parse_cell(cell, path, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": empty matrix file");

  Mat m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  return m;
}

DenseSym read_symmetric(const std::string& path) {
  const Mat m = read_dense(path);
  if (m.rows != m.cols)
    throw std::runtime_error(path + ": matrix is " + std::to_string(m.rows) + "x" +
                             std::to_string(m.cols) + ", expected square");
  const int p = m.rows;
  DenseSym out(p);
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      const double a = m(i, j);
      const double b = m(j, i);
      if (std::abs(a - b) > 1e-12)
        throw std::runtime_error(path + ": asymmetric beyond tolerance at (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
      out.set_sym(i, j, i == j ? a : 0.5 * (a + b));
    }
  }
  return out;
}

namespace {

std::string render(const double* a, int rows, int cols) {
  std::ostringstream body;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j) body << ',';
      body << fmt17(a[static_cast<std::size_t>(i) * cols + j]);
    }
    body << '\n';
  }
  return body.str();
}

}  // namespace

void write_matrix(const std::string& path, const Mat& m) {
  write_text_atomically(path, render(m.a.data(), m.rows, m.cols));
}

void write_matrix(const std::string& path, const DenseSym& m) {
  write_text_atomically(path, render(m.data(), m.dim(), m.dim()));
}

}  // namespace gista
