#include "polytree/tree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polytree {

Vertex Vertex::parent() const {
  if (is_root()) throw ParameterError("root has no predecessor");
  Vertex p{word};
  p.word.pop_back();
  return p;
}

Vertex Vertex::child(int letter) const {
  Vertex c{word};
  c.word.push_back(letter);
  return c;
}

std::string to_string(const Vertex& v) {
  if (v.is_root()) return "o";
  std::ostringstream os;
  for (size_t i = 0; i < v.word.size(); ++i) {
    if (i) os << '.';
    os << v.word[i];
  }
  return os.str();
}

namespace {

std::vector<int> parse_index_list(const std::string& text, const char* what) {
  std::vector<int> out;
  if (text.empty()) throw ParameterError(std::string(what) + ": empty index list");
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t dot = text.find('.', pos);
    std::string piece = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (piece.empty()) throw ParameterError(std::string(what) + ": empty index in '" + text + "'");
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(piece, &used);
    } catch (const std::exception&) {
      throw ParameterError(std::string(what) + ": bad index '" + piece + "'");
    }
    if (used != piece.size() || v < 0) {
      throw ParameterError(std::string(what) + ": bad index '" + piece + "'");
    }
    out.push_back(v);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return out;
}

}  // namespace

Vertex parse_vertex(int q, const std::string& text) {
  if (text == "o") return Vertex::root();
  Vertex v{parse_index_list(text, "vertex")};
  validate_vertex(q, v);
  return v;
}

void validate_vertex(int q, const Vertex& v) {
  for (size_t i = 0; i < v.word.size(); ++i) {
    const int hi = (i == 0) ? q : q - 1;
    if (v.word[i] < 0 || v.word[i] > hi) {
      throw ParameterError("vertex letter " + std::to_string(v.word[i]) +
                           " out of range at position " + std::to_string(i));
    }
  }
}

bool is_prefix(const Vertex& p, const Vertex& x) {
  if (p.word.size() > x.word.size()) return false;
  return std::equal(p.word.begin(), p.word.end(), x.word.begin());
}

bool is_in_branch(const Vertex& x, const Vertex& v) { return is_prefix(v, x); }

Vertex confluent(const Vertex& x, const Vertex& y) {
  size_t k = 0;
  const size_t n = std::min(x.word.size(), y.word.size());
  while (k < n && x.word[k] == y.word[k]) ++k;
  return Vertex{std::vector<int>(x.word.begin(), x.word.begin() + k)};
}

int distance(const Vertex& x, const Vertex& y) {
  const Vertex c = confluent(x, y);
  return x.depth() + y.depth() - 2 * c.depth();
}

std::vector<Vertex> children(int q, const Vertex& x) {
  const int count = x.is_root() ? q + 1 : q;
  std::vector<Vertex> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(x.child(i));
  return out;
}

End::End(Vertex prefix_, std::vector<int> period_)
    : prefix(std::move(prefix_)), period(std::move(period_)) {
  if (prefix.depth() < 1) throw ParameterError("end prefix must be nonempty");
  if (period.empty()) throw ParameterError("end period must be nonempty");
  for (int letter : period) {
    if (letter < 0) throw ParameterError("end period letter negative");
  }
}

int End::letter(int i) const {
  const int p = prefix.depth();
  if (i < p) return prefix.word[i];
  return period[(i - p) % period.size()];
}

std::string to_string(const End& xi) {
  std::ostringstream os;
  os << to_string(xi.prefix) << '|';
  for (size_t i = 0; i < xi.period.size(); ++i) {
    if (i) os << '.';
    os << xi.period[i];
  }
  return os.str();
}

End parse_end(int q, const std::string& text) {
  const size_t bar = text.find('|');
  if (bar == std::string::npos) {
    throw ParameterError("end '" + text + "' lacks the '|' separator");
  }
  Vertex prefix = parse_vertex(q, text.substr(0, bar));
  std::vector<int> period = parse_index_list(text.substr(bar + 1), "end period");
  End xi(std::move(prefix), std::move(period));
  validate_end(q, xi);
  return xi;
}

void validate_end(int q, const End& xi) {
  validate_vertex(q, xi.prefix);
  for (int letter : xi.period) {
    if (letter < 0 || letter > q - 1) {
      throw ParameterError("end period letter " + std::to_string(letter) +
                           " out of range");
    }
  }
}

bool same_end(const End& a, const End& b) {
  const int pa = a.prefix.depth();
  const int pb = b.prefix.depth();
  const int bound = std::max(pa, pb) +
                    static_cast<int>(std::lcm(a.period.size(), b.period.size()));
  for (int i = 0; i < bound; ++i) {
    if (a.letter(i) != b.letter(i)) return false;
  }
  return true;
}

Vertex ray_vertex(const End& xi, int k) {
  if (k < 0) throw ParameterError("ray_vertex: negative depth");
  Vertex v;
  v.word.reserve(k);
  for (int i = 0; i < k; ++i) v.word.push_back(xi.letter(i));
  return v;
}

int confluent_depth(const Vertex& x, const End& xi) {
  int k = 0;
  while (k < x.depth() && x.word[k] == xi.letter(k)) ++k;
  return k;
}

Vertex confluent_with_end(const Vertex& x, const End& xi) {
  const int k = confluent_depth(x, xi);
  return Vertex{std::vector<int>(x.word.begin(), x.word.begin() + k)};
}

int horocycle(const Vertex& x, const End& xi) {
  return x.depth() - 2 * confluent_depth(x, xi);
}

int confluent_depth(const End& a, const End& b) {
  if (same_end(a, b)) {
    throw ParameterError("confluent_depth: ends coincide");
  }
  const int bound = std::max(a.prefix.depth(), b.prefix.depth()) +
                    static_cast<int>(std::lcm(a.period.size(), b.period.size()));
  for (int i = 0; i < bound; ++i) {
    if (a.letter(i) != b.letter(i)) return i;
  }
  // unreachable: distinct eventually periodic words differ within the bound
  throw ParameterError("confluent_depth: ends coincide");
}

namespace {

Rational q_pow_neg(int q, int m) {
  Rational r(1);
  Rational base(q);
  for (int i = 0; i < m; ++i) r /= base;
  return r;
}

}  // namespace

Rational theta_metric(int q, const TreePoint& z, const TreePoint& w) {
  if (q < 2) throw ParameterError("theta_metric: q must be >= 2");
  const auto depth = [&]() -> std::optional<int> {
    if (std::holds_alternative<Vertex>(z) && std::holds_alternative<Vertex>(w)) {
      const Vertex& x = std::get<Vertex>(z);
      const Vertex& y = std::get<Vertex>(w);
      if (x == y) return std::nullopt;
      return confluent(x, y).depth();
    }
    if (std::holds_alternative<End>(z) && std::holds_alternative<End>(w)) {
      const End& a = std::get<End>(z);
      const End& b = std::get<End>(w);
      if (same_end(a, b)) return std::nullopt;
      return confluent_depth(a, b);
    }
    const Vertex& x = std::holds_alternative<Vertex>(z) ? std::get<Vertex>(z)
                                                        : std::get<Vertex>(w);
    const End& xi = std::holds_alternative<End>(z) ? std::get<End>(z)
                                                   : std::get<End>(w);
    return confluent_depth(x, xi);
  }();
  if (!depth.has_value()) return Rational(0);
  return q_pow_neg(q, *depth);
}

Cone::Cone(End end_, int width_) : end(std::move(end_)), width(width_) {
  if (width < 0) throw ParameterError("cone width must be >= 0");
}

int distance_to_ray(const Vertex& x, const End& xi) {
  const int c0 = confluent_depth(x, xi);
  int best = x.depth() + 0 - 2 * 0;  // k = 0 term: d(x, o) = |x|
  for (int k = 1; k <= c0; ++k) {
    const Vertex rk = ray_vertex(xi, k);
    const int d = x.depth() + k - 2 * confluent(x, rk).depth();
    best = std::min(best, d);
  }
  return best;
}

bool cone_contains(const Cone& c, const Vertex& x) {
  return distance_to_ray(x, c.end) <= c.width;
}

namespace {

void descend_collect(int q, const Vertex& base, int levels,
                     std::vector<Vertex>& out) {
  if (levels == 0) {
    out.push_back(base);
    return;
  }
  for (const Vertex& ch : children(q, base)) {
    descend_collect(q, ch, levels - 1, out);
  }
}

}  // namespace

std::vector<Vertex> cone_sample(int q, const Cone& c, int depth) {
  if (depth < 0) throw ParameterError("cone_sample: negative depth");
  std::vector<Vertex> out;
  // Members at word length d share a prefix of length >= d - a with xi; a
  // vertex branching off the ray at depth c0 sits at ray distance d - c0.
  for (int c0 = std::max(0, depth - c.width); c0 <= depth; ++c0) {
    const Vertex base = ray_vertex(c.end, c0);
    if (c0 == depth) {
      out.push_back(base);
      continue;
    }
    const int on_ray_letter = c.end.letter(c0);
    for (const Vertex& ch : children(q, base)) {
      if (ch.word.back() == on_ray_letter) continue;  // handled at larger c0
      descend_collect(q, ch, depth - c0 - 1, out);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polytree
