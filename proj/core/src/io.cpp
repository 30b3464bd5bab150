#include "hreg/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hreg/errors.hpp"

namespace hreg {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

class Lines {
 public:
  explicit Lines(std::string_view text) {
    std::size_t number = 0;
    while (!text.empty()) {
      ++number;
      const auto nl = text.find('\n');
      std::string_view raw = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      Line line{number, {}};
      std::size_t i = 0;
      while (i < raw.size()) {
        while (i < raw.size() && is_space(raw[i])) ++i;
        std::size_t j = i;
        while (j < raw.size() && !is_space(raw[j])) ++j;
        if (j > i) line.tokens.push_back(raw.substr(i, j - i));
        i = j;
      }
      if (!line.tokens.empty()) lines_.push_back(std::move(line));
    }
    last_ = number;
  }

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  std::size_t end_line() const { return last_; }

  const Line& next(std::string_view what) {
    if (done()) fail(ErrorCode::Format, last_, "unexpected end of input, expected " + std::string(what));
    return lines_[pos_++];
  }

  [[noreturn]] static void fail(ErrorCode code, std::size_t line, const std::string& msg) {
    throw Error(code, "line " + std::to_string(line) + ": " + msg);
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t last_ = 0;
};

std::uint32_t number(const Line& line, std::size_t i) {
  const std::string_view tok = line.tokens[i];
  std::uint32_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    Lines::fail(ErrorCode::Format, line.number, "expected a nonnegative integer, got '" +
                                                    std::string(tok) + "'");
  }
  return v;
}

void expect_header(const Line& line, std::string_view tag, std::size_t args) {
  if (line.tokens[0] != tag || line.tokens.size() != args + 1) {
    Lines::fail(ErrorCode::Format, line.number,
                "expected header '" + std::string(tag) + "' with " + std::to_string(args) +
                    " fields");
  }
}

void expect_fields(const Line& line, std::size_t n) {
  if (line.tokens.size() != n) {
    Lines::fail(ErrorCode::Format, line.number, "expected " + std::to_string(n) + " fields");
  }
}

std::string strip_code(const Error& e) {
  const std::string what = e.what();
  const std::size_t prefix = to_string(e.code()).size() + 2;
  return what.size() >= prefix ? what.substr(prefix) : what;
}

template <typename F>
auto at_line(std::size_t line, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    Lines::fail(e.code(), line, strip_code(e));
  }
}

BipartiteGraph read_graph(Lines& in, std::uint32_t leftId = 0, std::uint32_t rightId = 1) {
  const Line& head = in.next("bg header");
  expect_header(head, "bg", 3);
  const std::uint32_t nl = number(head, 1), nr = number(head, 2), m = number(head, 3);
  std::vector<Edge> edges;
  edges.reserve(m);
  std::set<Edge> seen;
  for (std::uint32_t k = 0; k < m; ++k) {
    const Line& line = in.next("edge line");
    expect_fields(line, 2);
    const Edge e{number(line, 0), number(line, 1)};
    if (e.left >= nl || e.right >= nr) {
      Lines::fail(ErrorCode::IndexOutOfRange, line.number,
                  "edge (" + std::to_string(e.left) + "," + std::to_string(e.right) +
                      ") outside " + std::to_string(nl) + "x" + std::to_string(nr));
    }
    if (!seen.insert(e).second) {
      Lines::fail(ErrorCode::DuplicateEdge, line.number,
                  "edge (" + std::to_string(e.left) + "," + std::to_string(e.right) + ") repeated");
    }
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  return at_line(head.number, [&] {
    return BipartiteGraph(VertexClass{leftId, nl}, VertexClass{rightId, nr}, edges);
  });
}

void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << "bg " << g.left().size << ' ' << g.right().size << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.left << ' ' << e.right << '\n';
}

VertexPartition read_partition(Lines& in) {
  const Line& head = in.next("vp header");
  expect_header(head, "vp", 2);
  const std::uint32_t n = number(head, 1), k = number(head, 2);
  const Line& line = in.next("label line");
  expect_fields(line, n);
  std::vector<std::uint32_t> labels(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    labels[v] = number(line, v);
    if (labels[v] >= k) {
      Lines::fail(ErrorCode::IndexOutOfRange, line.number,
                  "label " + std::to_string(labels[v]) + " of vertex " + std::to_string(v) +
                      " is not below " + std::to_string(k));
    }
  }
  return at_line(line.number, [&] { return VertexPartition::from_labels(labels, k); });
}

void write_partition(std::ostream& out, const VertexPartition& p) {
  out << "vp " << p.ground_size() << ' ' << p.order() << '\n';
  for (std::uint32_t v = 0; v < p.ground_size(); ++v) {
    if (v > 0) out << ' ';
    out << p.label_of(v);
  }
  out << '\n';
}

void expect_end(const Lines& in) {
  if (!in.done()) Lines::fail(ErrorCode::Format, in.peek().number, "trailing content");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Format, "cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Format, "cannot write " + path.string());
  f << text;
}

}  // namespace

BipartiteGraph parse_graph(std::string_view text) {
  Lines in(text);
  BipartiteGraph g = read_graph(in);
  expect_end(in);
  return g;
}

std::string format_graph(const BipartiteGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

ThreeGraph parse_threegraph(std::string_view text) {
  Lines in(text);
  const Line& head = in.next("h3 header");
  expect_header(head, "h3", 4);
  const std::array<std::uint32_t, 3> n{number(head, 1), number(head, 2), number(head, 3)};
  const std::uint32_t m = number(head, 4);
  std::vector<Triple> triples;
  triples.reserve(m);
  std::set<Triple> seen;
  for (std::uint32_t k = 0; k < m; ++k) {
    const Line& line = in.next("triple line");
    expect_fields(line, 3);
    const Triple t{number(line, 0), number(line, 1), number(line, 2)};
    if (t.v1 >= n[0] || t.v2 >= n[1] || t.v3 >= n[2]) {
      Lines::fail(ErrorCode::IndexOutOfRange, line.number, "triple outside the classes");
    }
    if (!seen.insert(t).second) {
      Lines::fail(ErrorCode::DuplicateEdge, line.number,
                  "triple (" + std::to_string(t.v1) + "," + std::to_string(t.v2) + "," +
                      std::to_string(t.v3) + ") repeated");
    }
    triples.push_back(t);
  }
  expect_end(in);
  return at_line(head.number, [&] {
    return ThreeGraph({VertexClass{0, n[0]}, VertexClass{1, n[1]}, VertexClass{2, n[2]}}, triples);
  });
}

std::string format_threegraph(const ThreeGraph& h) {
  std::ostringstream out;
  const auto& c = h.classes();
  out << "h3 " << c[0].size << ' ' << c[1].size << ' ' << c[2].size << ' ' << h.edge_count() << '\n';
  for (const Triple& t : h.triples()) out << t.v1 << ' ' << t.v2 << ' ' << t.v3 << '\n';
  return out.str();
}

VertexPartition parse_partition(std::string_view text) {
  Lines in(text);
  VertexPartition p = read_partition(in);
  expect_end(in);
  return p;
}

std::string format_partition(const VertexPartition& p) {
  std::ostringstream out;
  write_partition(out, p);
  return out.str();
}

Triad parse_triad(std::string_view text) {
  Lines in(text);
  const Line& head = in.next("tr header");
  expect_header(head, "tr", 3);
  const std::uint32_t na = number(head, 1), nb = number(head, 2), nc = number(head, 3);
  const std::size_t abLine = in.done() ? in.end_line() : in.peek().number;
  BipartiteGraph ab = read_graph(in, 0, 1);
  const std::size_t acLine = in.done() ? in.end_line() : in.peek().number;
  BipartiteGraph ac = read_graph(in, 0, 2);
  const std::size_t bcLine = in.done() ? in.end_line() : in.peek().number;
  BipartiteGraph bc = read_graph(in, 1, 2);
  expect_end(in);
  auto check = [](const BipartiteGraph& g, std::uint32_t l, std::uint32_t r, std::size_t line,
                  const char* name) {
    if (g.left().size != l || g.right().size != r) {
      Lines::fail(ErrorCode::ClassMismatch, line,
                  std::string(name) + " section must be " + std::to_string(l) + "x" +
                      std::to_string(r));
    }
  };
  check(ab, na, nb, abLine, "AB");
  check(ac, na, nc, acLine, "AC");
  check(bc, nb, nc, bcLine, "BC");
  return at_line(head.number, [&] { return Triad(ab, ac, bc); });
}

std::string format_triad(const Triad& t) {
  std::ostringstream out;
  out << "tr " << t.a().size << ' ' << t.b().size << ' ' << t.c().size << '\n';
  write_graph(out, t.ab());
  write_graph(out, t.ac());
  write_graph(out, t.bc());
  return out.str();
}

TwoPartition parse_twopartition(std::string_view text) {
  Lines in(text);
  const Line& head = in.next("tp header");
  if (head.tokens[0] != "tp" || head.tokens.size() < 2) {
    Lines::fail(ErrorCode::Format, head.number, "expected header 'tp <c> <sizes...>'");
  }
  const std::uint32_t c = number(head, 1);
  expect_fields(head, 2 + c);
  std::vector<std::uint32_t> frame(c);
  for (std::uint32_t i = 0; i < c; ++i) frame[i] = number(head, 2 + i);

  VertexPartition z = read_partition(in);
  std::vector<TaggedGraph> graphs;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> firstLine;
  while (!in.done()) {
    const Line& pl = in.next("pair header");
    expect_header(pl, "pair", 2);
    const std::uint32_t i = number(pl, 1), j = number(pl, 2);
    if (i >= z.order() || j >= z.order() || i == j) {
      Lines::fail(ErrorCode::IndexOutOfRange, pl.number,
                  "bad cluster pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    BipartiteGraph g = read_graph(in);
    if (g.left().size != z.block(i).size() || g.right().size != z.block(j).size()) {
      Lines::fail(ErrorCode::ClassMismatch, pl.number,
                  "graph on cluster pair (" + std::to_string(i) + "," + std::to_string(j) +
                      ") does not match the cluster sizes");
    }
    firstLine.emplace(std::minmax(i, j), pl.number);
    graphs.push_back({i, j, std::move(g)});
  }
  TwoPartition tp = at_line(head.number, [&] {
    return TwoPartition(frame, std::move(z), std::move(graphs));
  });
  const auto violations = validate_two_partition(tp);
  if (!violations.empty()) {
    const auto& v = violations.front();
    const auto it = firstLine.find(std::minmax(v.first, v.second));
    const std::size_t line = it == firstLine.end() ? in.end_line() : it->second;
    const ErrorCode code =
        v.kind == TwoPartitionViolation::Kind::NotDisjoint ? ErrorCode::NotDisjoint
        : v.kind == TwoPartitionViolation::Kind::ClassMismatch ? ErrorCode::ClassMismatch
                                                                : ErrorCode::InvariantViolation;
    Lines::fail(code, line, v.describe());
  }
  return tp;
}

std::string format_twopartition(const TwoPartition& tp) {
  std::ostringstream out;
  out << "tp " << tp.frame().size();
  for (auto s : tp.frame()) out << ' ' << s;
  out << '\n';
  write_partition(out, tp.z());
  for (const TaggedGraph& g : tp.graphs()) {
    out << "pair " << g.first << ' ' << g.second << '\n';
    write_graph(out, g.graph);
  }
  return out.str();
}

BipartiteGraph load_graph(const std::filesystem::path& path) { return parse_graph(read_file(path)); }
void save_graph(const std::filesystem::path& path, const BipartiteGraph& g) {
  write_file(path, format_graph(g));
}
ThreeGraph load_threegraph(const std::filesystem::path& path) {
  return parse_threegraph(read_file(path));
}
void save_threegraph(const std::filesystem::path& path, const ThreeGraph& h) {
  write_file(path, format_threegraph(h));
}
VertexPartition load_partition(const std::filesystem::path& path) {
  return parse_partition(read_file(path));
}
void save_partition(const std::filesystem::path& path, const VertexPartition& p) {
  write_file(path, format_partition(p));
}
Triad load_triad(const std::filesystem::path& path) { return parse_triad(read_file(path)); }
void save_triad(const std::filesystem::path& path, const Triad& t) {
  write_file(path, format_triad(t));
}
TwoPartition load_twopartition(const std::filesystem::path& path) {
  return parse_twopartition(read_file(path));
}
void save_twopartition(const std::filesystem::path& path, const TwoPartition& tp) {
  write_file(path, format_twopartition(tp));
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace hreg
