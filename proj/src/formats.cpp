#include "nlsg/formats.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "nlsg/errors.hpp"

namespace nlsg {

namespace {

constexpr const char* kGraphMagic = "nlsg-graph v1";
constexpr const char* kCodeMagic = "nlsg-code v1";

// Yields trimmed, non-empty, comment-free lines with their 1-based numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  bool next(std::string& line) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++number_;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      auto b = raw.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto e = raw.find_last_not_of(" \t\r");
      line = raw.substr(b, e - b + 1);
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(number_) + ": " + what);
  }
  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

std::size_t to_index(const LineReader& r, const std::string& tok) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) r.fail("expected a non-negative integer, got '" + tok + "'");
  return v;
}

std::size_t header_value(LineReader& r, const char* key) {
  std::string line;
  if (!r.next(line)) r.fail(std::string("missing '") + key + "' line");
  auto tok = split(line);
  if (tok.size() != 2 || tok[0] != key) r.fail(std::string("expected '") + key + " <number>'");
  return to_index(r, tok[1]);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  return out;
}

}  // namespace

void write_graph(std::ostream& out, const Multigraph& g) {
  out << kGraphMagic << "\nvertices " << g.vertices() << "\ndegree " << g.degree() << "\n";
  for (std::size_t v = 0; v < g.vertices(); ++v)
    for (std::size_t p = 0; p < g.degree(); ++p) {
      Port q = g.rotate(v, p);
      out << v << ' ' << p << " -> " << q.vertex << ' ' << q.port << '\n';
    }
}

Multigraph read_graph(std::istream& in) {
  LineReader r(in);
  std::string line;
  if (!r.next(line) || line != kGraphMagic) r.fail(std::string("expected '") + kGraphMagic + "'");
  std::size_t n = header_value(r, "vertices");
  std::size_t d = header_value(r, "degree");
  if (n > (1u << 31) / std::max<std::size_t>(d, 1)) r.fail("graph too large");
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> slots(n * d, kUnset);
  while (r.next(line)) {
    auto tok = split(line);
    if (tok.size() != 5 || tok[2] != "->") r.fail("expected 'v p -> u q'");
    std::size_t v = to_index(r, tok[0]), p = to_index(r, tok[1]);
    std::size_t u = to_index(r, tok[3]), q = to_index(r, tok[4]);
    if (v >= n || u >= n || p >= d || q >= d) r.fail("vertex or port out of range");
    if (slots[v * d + p] != kUnset) r.fail("slot " + tok[0] + " " + tok[1] + " listed twice");
    slots[v * d + p] = static_cast<std::uint32_t>(u * d + q);
  }
  for (std::size_t s = 0; s < slots.size(); ++s)
    if (slots[s] == kUnset) throw ParseError("slot " + std::to_string(s / d) + " " + std::to_string(s % d) + " missing");
  return Multigraph(n, d, std::move(slots));
}

void write_edge_list(std::ostream& out, const Multigraph& g) {
  out << "vertices " << g.vertices() << '\n';
  const auto& slots = g.slots();
  std::size_t d = g.degree();
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (slots[s] == s) {
      out << "loop " << s / d << '\n';
    } else if (s / d == slots[s] / d) {
      // A loop through two ports is written as two single loops.
      out << "loop " << s / d << '\n';
    } else if (s < slots[s]) {
      out << s / d << ' ' << slots[s] / d << '\n';
    }
  }
}

Multigraph read_edge_list(std::istream& in) {
  LineReader r(in);
  std::string line;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> loops;
  std::size_t declared = 0, largest = 0;
  bool has_declared = false, any = false;
  while (r.next(line)) {
    auto tok = split(line);
    if (tok.size() == 2 && tok[0] == "vertices") {
      declared = to_index(r, tok[1]);
      has_declared = true;
    } else if (tok.size() == 2 && tok[0] == "loop") {
      loops.push_back(to_index(r, tok[1]));
      largest = std::max(largest, loops.back());
      any = true;
    } else if (tok.size() == 2) {
      std::size_t u = to_index(r, tok[0]), v = to_index(r, tok[1]);
      if (u == v) r.fail("use 'loop v' for a loop");
      edges.emplace_back(u, v);
      largest = std::max({largest, u, v});
      any = true;
    } else {
      r.fail("expected 'u v', 'loop v' or 'vertices N'");
    }
  }
  std::size_t n = has_declared ? declared : (any ? largest + 1 : 0);
  if (any && largest >= n) throw ParseError("vertex " + std::to_string(largest) + " exceeds the declared count");
  return from_edge_list(n, edges, loops);
}

Multigraph load_graph(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string first;
  {
    LineReader r(in);
    r.next(first);
  }
  in.clear();
  in.seekg(0);
  return first == kGraphMagic ? read_graph(in) : read_edge_list(in);
}

void save_graph(const std::string& path, const Multigraph& g, bool edge_list) {
  std::ofstream out = open_out(path);
  edge_list ? write_edge_list(out, g) : write_graph(out, g);
}

void write_code(std::ostream& out, const BinaryCode& c) {
  out << kCodeMagic << "\nn " << c.length() << "\nk " << c.dimension() << '\n';
  for (auto row : c.generator()) {
    for (std::size_t j = 0; j < c.length(); ++j) out << (((row >> j) & 1) ? '1' : '0');
    out << '\n';
  }
}

BinaryCode read_code(std::istream& in) {
  LineReader r(in);
  std::string line;
  if (!r.next(line) || line != kCodeMagic) r.fail(std::string("expected '") + kCodeMagic + "'");
  std::size_t n = header_value(r, "n");
  std::size_t k = header_value(r, "k");
  if (n > 64) r.fail("codes longer than 64 are not supported");
  std::vector<std::uint64_t> rows;
  while (r.next(line)) {
    if (line.size() != n) r.fail("row has " + std::to_string(line.size()) + " bits, expected " + std::to_string(n));
    std::uint64_t row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (line[j] != '0' && line[j] != '1') r.fail("rows may only contain 0 and 1");
      if (line[j] == '1') row |= std::uint64_t{1} << j;
    }
    rows.push_back(row);
  }
  if (rows.size() != k) throw ParseError("expected " + std::to_string(k) + " rows, found " + std::to_string(rows.size()));
  BinaryCode c(n, rows);
  if (c.dimension() != k) throw ParseError("generator rows are linearly dependent");
  return c;
}

BinaryCode load_code(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_code(in);
}

void save_code(const std::string& path, const BinaryCode& c) {
  std::ofstream out = open_out(path);
  write_code(out, c);
}

KeyValues read_key_values(std::istream& in) {
  LineReader r(in);
  KeyValues kv;
  std::string line;
  while (r.next(line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) r.fail("expected 'key = value'");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) r.fail("empty key");
    if (kv.count(key)) r.fail("duplicate key '" + key + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void write_key_values(std::ostream& out, const KeyValues& kv) {
  for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
}

std::vector<double> parse_list(const std::string& text) {
  auto number = [&](const std::string& s) {
    double x = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("bad number '" + s + "' in list");
    return x;
  };
  std::vector<double> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    double lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
    if (lo != std::floor(lo) || hi != std::floor(hi) || lo > hi) throw UsageError("bad range '" + text + "'");
    for (double x = lo; x <= hi; x += 1.0) out.push_back(x);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(number(item));
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), width_(header.size()) {
  for (const auto& h : header) *this << h;
  end_row();
}

CsvWriter& CsvWriter::operator<<(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) {
    row_.push_back(cell);
  } else {
    std::string q = "\"";
    for (char c : cell) {
      if (c == '"') q += '"';
      q += c;
    }
    row_.push_back(q + '"');
  }
  return *this;
}

void CsvWriter::end_row() {
  if (row_.size() != width_) throw Error("csv row has " + std::to_string(row_.size()) + " cells, header has " +
                                         std::to_string(width_));
  for (std::size_t i = 0; i < row_.size(); ++i) out_ << (i ? "," : "") << row_[i];
  out_ << '\n';
  row_.clear();
}

}  // namespace nlsg
