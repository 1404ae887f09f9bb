// Line-oriented spec format:
//
//   vertices: <id> <id> ...
//   arrow <name>: <id> -> <id> deg <int>
//   diff <name> = <element>
//   potential = <element>
//
// element := term (('+'|'-') term)*, term := [rational '*'] path,
// path := name ('.' name)* | 'e(' id ')'. '#' starts a comment.

#include <cctype>
#include <sstream>

#include "cyforge/errors.hpp"
#include "cyforge/quiverdg.hpp"

namespace cyforge {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == '\'' ||
         c == '^';
}
bool is_vertex_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_no) : s_(line), line_(line_no) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, pos_ + 1, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::size_t column() const { return pos_ + 1; }
  std::size_t line() const { return line_; }

  std::string name() {
    skip_ws();
    if (pos_ >= s_.size() || !is_name_start(s_[pos_])) fail("expected a name");
    std::size_t b = pos_;
    while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }
  std::string vertex() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < s_.size() && is_vertex_char(s_[pos_])) ++pos_;
    if (b == pos_) fail("expected a vertex identifier");
    return std::string(s_.substr(b, pos_ - b));
  }
  int integer() {
    skip_ws();
    std::size_t b = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) fail("expected an integer");
    return std::stoi(std::string(s_.substr(b, pos_ - b)));
  }
  Scalar rational() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t d = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d == pos_) fail("expected a denominator");
    }
    Scalar r(std::string(s_.substr(b, pos_ - b)));
    if (r.get_den() == 0) fail("zero denominator");
    r.canonicalize();
    return r;
  }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

Path parse_path(LineScanner& sc, const GradedQuiver& q) {
  if (sc.accept("e(")) {
    std::size_t col = sc.column();
    std::string v = sc.vertex();
    auto id = q.find_vertex(v);
    if (!id) throw ParseError(sc.line(), col, "unknown vertex '" + v + "'");
    sc.expect(")");
    return Path::idempotent(*id);
  }
  Path p;
  do {
    std::size_t col = sc.column();
    std::string n = sc.name();
    auto a = q.find_arrow(n);
    if (!a) throw ParseError(sc.line(), col, "unknown arrow '" + n + "'");
    const auto& ar = q.arrow(*a);
    if (p.arrows.empty()) {
      p.source = ar.source;
    } else if (p.target != ar.source) {
      throw ParseError(sc.line(), col, "arrow '" + n + "' is not composable with its predecessor");
    }
    p.arrows.push_back(*a);
    p.target = ar.target;
  } while (sc.accept("."));
  return p;
}

Element parse_element(LineScanner& sc, const GradedQuiver& q) {
  Element out;
  if (sc.peek() == '0') {
    sc.rational();
    if (!sc.at_end()) sc.fail("unexpected text after 0");
    return out;
  }
  bool first = true;
  while (true) {
    Scalar sign = 1;
    if (sc.accept("+")) {
    } else if (sc.accept("-")) {
      sign = -1;
    } else if (!first) {
      sc.fail("expected '+' or '-'");
    }
    first = false;
    Scalar coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
      coeff = sc.rational();
      sc.expect("*");
    }
    out.add(parse_path(sc, q), sign * coeff);
    if (sc.at_end()) break;
  }
  return out;
}

}  // namespace

ParsedSpec parse_spec(std::string_view text) {
  ParsedSpec out;
  auto& pres = out.presentation;
  bool have_vertices = false;
  std::vector<bool> diff_set;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    LineScanner sc(line, line_no);
    if (sc.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    if (sc.accept("vertices:")) {
      if (have_vertices) sc.fail("vertices declared twice");
      have_vertices = true;
      while (!sc.at_end()) {
        std::size_t col = sc.column();
        std::string v = sc.vertex();
        if (pres.quiver.find_vertex(v)) throw ParseError(line_no, col, "duplicate vertex '" + v + "'");
        pres.quiver.add_vertex(v);
      }
    } else if (sc.accept("arrow ")) {
      if (!have_vertices) sc.fail("arrow before vertices");
      std::size_t col = sc.column();
      std::string n = sc.name();
      sc.expect(":");
      std::string s = sc.vertex();
      sc.expect("->");
      std::string t = sc.vertex();
      sc.expect("deg");
      int d = sc.integer();
      if (!sc.at_end()) sc.fail("unexpected text after arrow declaration");
      if (pres.quiver.find_arrow(n))
        throw DuplicateArrow(std::to_string(line_no) + ":" + std::to_string(col) + ": duplicate arrow '" + n + "'");
      auto sv = pres.quiver.find_vertex(s);
      auto tv = pres.quiver.find_vertex(t);
      if (!sv || !tv)
        throw UnknownVertex(std::to_string(line_no) + ":" + std::to_string(col) + ": unknown vertex '" + (!sv ? s : t) + "'");
      pres.add_arrow(n, *sv, *tv, d);
      diff_set.push_back(false);
    } else if (sc.accept("diff ")) {
      std::size_t col = sc.column();
      std::string n = sc.name();
      auto a = pres.quiver.find_arrow(n);
      if (!a) throw ParseError(line_no, col, "unknown arrow '" + n + "'");
      if (diff_set[static_cast<std::size_t>(*a)]) throw ParseError(line_no, col, "differential of '" + n + "' given twice");
      sc.expect("=");
      pres.set_diff(*a, parse_element(sc, pres.quiver));
      diff_set[static_cast<std::size_t>(*a)] = true;
    } else if (sc.accept("potential")) {
      sc.expect("=");
      if (out.potential) sc.fail("potential given twice");
      std::size_t col = sc.column();
      Element w = parse_element(sc, pres.quiver);
      try {
        out.potential = Potential(pres.quiver, w);
      } catch (const Error& e) {
        throw ParseError(line_no, col, e.what());
      }
    } else {
      sc.fail("unrecognized statement");
    }
    if (end == text.size()) break;
  }
  if (!have_vertices) throw ParseError(line_no, 1, "missing 'vertices:' line");
  pres.diff.resize(pres.quiver.arrow_count());
  validate_presentation(pres);
  return out;
}

std::string format_path(const GradedQuiver& q, const Path& p) {
  if (p.is_idempotent()) return "e(" + q.vertex_name(p.source) + ")";
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += '.';
    s += q.arrow(p.arrows[i]).name;
  }
  return s;
}

std::string format_element(const GradedQuiver& q, const Element& x) {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [p, c] : x.terms()) {
    Scalar a = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (a != 1) s += a.get_str() + "*";
    s += format_path(q, p);
  }
  return s;
}

std::string pretty_print(const DgPresentation& p, const std::optional<Potential>& w) {
  std::ostringstream os;
  const auto& q = p.quiver;
  os << "vertices:";
  for (const auto& v : q.vertices()) os << ' ' << v;
  os << '\n';
  for (const auto& a : q.arrows())
    os << "arrow " << a.name << ": " << q.vertex_name(a.source) << " -> " << q.vertex_name(a.target)
       << " deg " << a.degree << '\n';
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    if (!p.diff[a].is_zero())
      os << "diff " << q.arrows()[a].name << " = " << format_element(q, p.diff[a]) << '\n';
  if (w && !w->is_zero()) os << "potential = " << format_element(q, w->element()) << '\n';
  return os.str();
}

}  // namespace cyforge
