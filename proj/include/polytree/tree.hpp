#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polytree/scalars.hpp"

namespace polytree {

// ---------------------------------------------------------------------------
// Vertices of the homogeneous tree T_q, encoded as words of child indices.
// The root o is the empty word; the first letter ranges over {0,...,q}, every
// subsequent letter over {0,...,q-1}.  Words biject with vertices (there are
// no backtracking letters), and the predecessor is the word with the last
// letter dropped.
// ---------------------------------------------------------------------------

struct Vertex {
  std::vector<int> word;

  static Vertex root() { return Vertex{}; }

  int depth() const { return static_cast<int>(word.size()); }
  bool is_root() const { return word.empty(); }

  Vertex parent() const;
  Vertex child(int letter) const;

  bool operator==(const Vertex& other) const { return word == other.word; }
  bool operator<(const Vertex& other) const {
    return std::lexicographical_compare(word.begin(), word.end(),
                                        other.word.begin(), other.word.end());
  }
};

/// Text format: "o" for the root, otherwise dot-separated indices ("0.1.1").
std::string to_string(const Vertex& v);
Vertex parse_vertex(int q, const std::string& text);

/// Checks letter ranges against q; throws ParameterError on violation.
void validate_vertex(int q, const Vertex& v);

/// prefix(p, x): p is an initial segment of x (equivalently x lies in T_p).
bool is_prefix(const Vertex& p, const Vertex& x);
bool is_in_branch(const Vertex& x, const Vertex& v);

Vertex confluent(const Vertex& x, const Vertex& y);
int distance(const Vertex& x, const Vertex& y);

/// Forward children of x: q+1 of them at the root, q elsewhere.
std::vector<Vertex> children(int q, const Vertex& x);

// ---------------------------------------------------------------------------
// Ends of T, restricted to eventually periodic words: every boundary point
// used by the experiments is prefix + period.period.period...
// ---------------------------------------------------------------------------

struct End {
  Vertex prefix;            // |prefix| >= 1
  std::vector<int> period;  // nonempty, letters in {0,...,q-1}

  End(Vertex prefix_, std::vector<int> period_);

  /// Letter i >= 0 of the infinite expansion.
  int letter(int i) const;
};

/// Text format: "<vertex>|<idx>(.<idx>)*", e.g. "0|1" or "0.1|0.1".
std::string to_string(const End& xi);
End parse_end(int q, const std::string& text);
void validate_end(int q, const End& xi);

/// Equality of the infinite expansions (decidable for eventually periodic
/// words by comparing up to max prefix length + lcm of the period lengths).
bool same_end(const End& a, const End& b);

/// Depth-k vertex on the ray pi(o, xi).
Vertex ray_vertex(const End& xi, int k);

/// |x ^ xi|: length of the longest common prefix of x and xi's expansion.
int confluent_depth(const Vertex& x, const End& xi);
Vertex confluent_with_end(const Vertex& x, const End& xi);

/// hor(x, xi) = |x| - 2 |x ^ xi|.
int horocycle(const Vertex& x, const End& xi);

/// |xi ^ eta| for distinct ends; ParameterError if the ends coincide.
int confluent_depth(const End& a, const End& b);

// ---------------------------------------------------------------------------
// Ultrametric theta(z, w) = q^{-|z ^ w|}, 0 on the diagonal.
// ---------------------------------------------------------------------------

using TreePoint = std::variant<Vertex, End>;

Rational theta_metric(int q, const TreePoint& z, const TreePoint& w);

// ---------------------------------------------------------------------------
// Cones Gamma_a(xi) = { x : d(x, pi(o,xi)) <= a }.
// ---------------------------------------------------------------------------

struct Cone {
  End end;
  int width;  // a >= 0

  Cone(End end_, int width_);
};

/// Distance from x to the ray pi(o, xi), computed as the true minimum of
/// d(x, ray_vertex(xi, k)) over k in [0, |x ^ xi| + a-slack].
int distance_to_ray(const Vertex& x, const End& xi);

bool cone_contains(const Cone& c, const Vertex& x);

/// All cone members of word length = depth, sorted lexicographically.
std::vector<Vertex> cone_sample(int q, const Cone& c, int depth);

}  // namespace polytree
