#pragma once

// Text formats.
//
// Edge list:
//   n m [directed|undirected]
//   u v [re,im]          (m lines, 0-indexed; optional complex weight)
// Blank lines and lines starting with '#' are ignored. In undirected files
// every line is one edge and yields the two arcs (u,v) and (v,u).
//
// Matrix:
//   rows cols
//   re,im re,im ...      (rows lines, row-major)

#include "qswlab/graph.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace qswlab::io {

inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw Error("cannot format double");
  return std::string(buf, end);
}

inline std::string format_complex(Complex z) { return format_double(z.real()) + "," + format_double(z.imag()); }

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline std::size_t parse_index(std::string_view tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("expected non-negative integer for ") + what + ", got '" + std::string(tok) + "'",
                     line);
  }
  return value;
}

inline double parse_real(std::string_view tok, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("expected a real number, got '" + std::string(tok) + "'", line);
  }
  return value;
}

inline Complex parse_complex(std::string_view tok, std::size_t line) {
  auto comma = tok.find(',');
  if (comma == std::string_view::npos) throw ParseError("expected 're,im', got '" + std::string(tok) + "'", line);
  return {parse_real(tok.substr(0, comma), line), parse_real(tok.substr(comma + 1), line)};
}

// Next line that is neither blank nor a comment; false at EOF.
inline bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    return true;
  }
  return false;
}

}  // namespace detail

inline Digraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_content_line(in, line, line_no)) throw ParseError("missing header 'n m [directed|undirected]'", 1);
  auto header = detail::split_ws(line);
  if (header.size() < 2 || header.size() > 3) {
    throw ParseError("header must be 'n m [directed|undirected]'", line_no);
  }
  std::size_t n = detail::parse_index(header[0], line_no, "vertex count");
  std::size_t m = detail::parse_index(header[1], line_no, "edge count");
  bool directed = true;
  if (header.size() == 3) {
    if (header[2] == "undirected") {
      directed = false;
    } else if (header[2] != "directed") {
      throw ParseError("unknown orientation '" + std::string(header[2]) + "'", line_no);
    }
  }

  std::vector<Arc> arcs;
  for (std::size_t e = 0; e < m; ++e) {
    if (!detail::next_content_line(in, line, line_no)) {
      throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(e), line_no + 1);
    }
    auto tok = detail::split_ws(line);
    if (tok.size() < 2 || tok.size() > 3) throw ParseError("edge line must be 'u v [re,im]'", line_no);
    Vertex u = detail::parse_index(tok[0], line_no, "source");
    Vertex v = detail::parse_index(tok[1], line_no, "target");
    if (u >= n || v >= n) throw ParseError("vertex index out of range (n = " + std::to_string(n) + ")", line_no);
    if (u == v) throw ParseError("self-loops are not supported", line_no);
    Complex w = tok.size() == 3 ? detail::parse_complex(tok[2], line_no) : Complex{1.0, 0.0};
    if (w == Complex{0.0, 0.0}) throw ParseError("arc weight must be nonzero", line_no);
    arcs.push_back({u, v, w});
    if (!directed) arcs.push_back({v, u, w});
  }
  if (detail::next_content_line(in, line, line_no)) throw ParseError("trailing content after the edge list", line_no);
  try {
    return Digraph(n, std::move(arcs));
  } catch (const InvalidArgument& err) {
    throw ParseError(err.what(), line_no);
  }
}

inline Digraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

/// Writes the undirected form when every arc has a reverse arc of the same
/// weight, the directed form otherwise. Weights are written only when some
/// weight differs from 1.
inline void write_edge_list(const Digraph& g, std::ostream& out) {
  bool undirected = std::all_of(g.arcs().begin(), g.arcs().end(), [&](const Arc& a) {
    auto back = g.weight(a.to, a.from);
    return back && *back == a.weight;
  });
  bool weighted = !g.has_unit_weights();
  std::size_t m = undirected ? g.arc_count() / 2 : g.arc_count();
  out << g.size() << ' ' << m << (undirected ? " undirected" : " directed") << '\n';
  for (const Arc& a : g.arcs()) {
    if (undirected && a.from > a.to) continue;
    out << a.from << ' ' << a.to;
    if (weighted) out << ' ' << format_complex(a.weight);
    out << '\n';
  }
}

inline std::string to_edge_list(const Digraph& g) {
  std::ostringstream os;
  write_edge_list(g, os);
  return os.str();
}

inline void write_matrix(const CMatrix& m, std::ostream& out) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ' ';
      out << format_complex(m(r, c));
    }
    out << '\n';
  }
}

inline CMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_content_line(in, line, line_no)) throw ParseError("missing matrix header 'rows cols'", 1);
  auto header = detail::split_ws(line);
  if (header.size() != 2) throw ParseError("matrix header must be 'rows cols'", line_no);
  auto rows = static_cast<Eigen::Index>(detail::parse_index(header[0], line_no, "rows"));
  auto cols = static_cast<Eigen::Index>(detail::parse_index(header[1], line_no, "cols"));
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!detail::next_content_line(in, line, line_no)) throw ParseError("missing matrix row", line_no + 1);
    auto tok = detail::split_ws(line);
    if (static_cast<Eigen::Index>(tok.size()) != cols) {
      throw ParseError("expected " + std::to_string(cols) + " entries, found " + std::to_string(tok.size()), line_no);
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = detail::parse_complex(tok[static_cast<std::size_t>(c)], line_no);
  }
  return m;
}

inline void write_matrix_file(const CMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_matrix(m, out);
}

inline CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

}  // namespace qswlab::io
