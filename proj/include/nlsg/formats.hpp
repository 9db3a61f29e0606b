#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nlsg/codes.hpp"
#include "nlsg/multigraph.hpp"

namespace nlsg {

// nlsg-graph v1: magic line, `vertices N`, `degree D`, then one `v p -> u q`
// line per slot. Blank lines and `#` comments are ignored.
void write_graph(std::ostream& out, const Multigraph& g);
Multigraph read_graph(std::istream& in);

// `u v` per edge and `loop v` per loop port; an optional `vertices N` line
// fixes the vertex count, otherwise it is one more than the largest label.
void write_edge_list(std::ostream& out, const Multigraph& g);
Multigraph read_edge_list(std::istream& in);

// Either format, chosen by the first meaningful line.
Multigraph load_graph(const std::string& path);
void save_graph(const std::string& path, const Multigraph& g, bool edge_list = false);

// nlsg-code v1: magic line, `n N`, `k K`, then K rows of N characters 0/1.
// Character j of a row is coordinate j.
void write_code(std::ostream& out, const BinaryCode& c);
BinaryCode read_code(std::istream& in);
BinaryCode load_code(const std::string& path);
void save_code(const std::string& path, const BinaryCode& c);

using KeyValues = std::map<std::string, std::string>;
// One `key = value` per line, `#` comments allowed.
KeyValues read_key_values(std::istream& in);
void write_key_values(std::ostream& out, const KeyValues& kv);
// Comma separated numbers or a `lo..hi` range, e.g. "1,2,4" or "6..12".
std::vector<double> parse_list(const std::string& text);

// Shortest round-trip decimal; "inf" and "nan" for the non-finite values.
std::string format_number(double x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  CsvWriter& operator<<(const std::string& cell);
  CsvWriter& operator<<(const char* cell) { return *this << std::string(cell); }
  CsvWriter& operator<<(double x) { return *this << format_number(x); }
  CsvWriter& operator<<(std::size_t x) { return *this << std::to_string(x); }
  CsvWriter& operator<<(int x) { return *this << std::to_string(x); }
  CsvWriter& operator<<(bool x) { return *this << std::string(x ? "true" : "false"); }
  // Ends the current row; throws if its width differs from the header.
  void end_row();

 private:
  std::ostream& out_;
  std::size_t width_;
  std::vector<std::string> row_;
};

}  // namespace nlsg
