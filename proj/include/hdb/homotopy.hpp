#pragma once

#include <random>
#include <vector>

#include "hdb/algebra.hpp"

namespace hdb {

// Z/2-graded cochain complex: a space with an odd endomorphism. Squaring to
// zero is not enforced at construction so that defective input can be
// represented; validate_complex reports the defects.
class Complex {
 public:
  Complex(SpacePtr space, RatMat d);

  const SpacePtr& space() const { return d_.source(); }
  const GradedLinearMap& d() const { return d_; }
  int dim() const { return space()->dim(); }

 private:
  GradedLinearMap d_;
};

// Even map of complexes; commuting with the differentials is checked by
// validate_chain_map, not at construction.
class ChainMap {
 public:
  ChainMap(Complex source, Complex target, RatMat f);

  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }
  const GradedLinearMap& map() const { return f_; }

 private:
  Complex source_, target_;
  GradedLinearMap f_;
};

ValidationReport validate_complex(const Complex& x);
ValidationReport validate_chain_map(const ChainMap& f);

// Same basis with parities flipped and the differential negated (the sign
// keeps reversal compatible with the block conventions below).
Complex parity_reverse_complex(const Complex& x);

// Mapping cylinder of f : X -> Y on X + PiX + Y with
//   d(x1, Pix2, y) = (d x1 - x2, Pi(-d x2), d y + f(x2));
// j embeds X, i embeds Y, p projects to Y via f on the first block
// (p o j = f), and p is always a quasi-isomorphism.
struct Cylinder {
  Complex total;
  ChainMap j;  // X -> total
  ChainMap i;  // Y -> total
  ChainMap p;  // total -> Y
};
Cylinder cylinder(const ChainMap& f);

// Mapping cone of f on PiX + Y with d(Pix, y) = (-Pi d x, d y + f(x)).
struct Cone {
  Complex total;
  ChainMap in;   // Y -> total
  ChainMap out;  // total -> PiX
};
Cone cone(const ChainMap& f);

// Path object (cocylinder) of f on X + Y + PiY with
//   d(x, y1, Piy2) = (d x, d y1, Pi(f(x) - y1 - d y2));
// j(x) = (x, f(x), 0) is always a quasi-isomorphism, p projects to Y
// (p o j = f), q projects to X (q o j = id).
struct Cocylinder {
  Complex total;
  ChainMap j;  // X -> total
  ChainMap p;  // total -> Y
  ChainMap q;  // total -> X
};
Cocylinder cocylinder(const ChainMap& f);

// Homotopy fibre (cocone) of f on X + PiY with d(x, Piy) = (dx, Pi(f(x) - dy)).
struct Cocone {
  Complex total;
  ChainMap in;   // PiY -> total
  ChainMap out;  // total -> X
};
Cocone cocone(const ChainMap& f);

// Reversing the cone of f yields the cocone of -f on the nose: same
// positional parities, same differential matrix (names differ by Pi marks).
bool cone_cocone_match(const ChainMap& f);

struct ParityHomology {
  int dim = 0;
  std::vector<Element> reps;  // cycles in full-space coordinates
};
struct Homology {
  ParityHomology even, odd;
};

// Kernel-mod-image with a deterministic choice of representatives; requires a
// valid complex.
Homology homology(const Complex& x);

// Matrices of H(f) on the representative bases of homology(source) and
// homology(target), one per parity.
struct InducedMap {
  RatMat even, odd;
};
InducedMap induced_homology_map(const ChainMap& f);
bool is_quasi_iso(const ChainMap& f);

// Deterministic pseudo-random complexes and chain maps for property tests:
// a complex is zero summands plus acyclic two-term pieces, conjugated by a
// random even change of basis; a chain map is a random rational combination
// of an exact basis of the space of chain maps.
Complex random_complex(std::mt19937_64& rng, int max_dim);
ChainMap random_chain_map(std::mt19937_64& rng, const Complex& x, const Complex& y);

// The homotopy-fibre complex attached to a decomposition L = K + V and an
// odd squared-zero derivation D with PDP = PD:
//   total = L + PiV, d(x, Pia) = (D x, -Pi P(x + D a)).
// j embeds K, p projects onto (L, D), q(x, Pia) = (1 - P)(x + D a) retracts
// onto K with q o j = id; j and q are quasi-isomorphisms. The shifted variant
// is the parity reversal PiL + V with d(Pix, a) = (-Pi D x, P(x + D a)).
struct SmallCocylinder {
  Complex on_l;   // (L, D)
  Complex on_k;   // (K, D restricted)
  Complex total;  // L + PiV
  ChainMap j;     // K -> total
  ChainMap p;     // total -> L
  ChainMap q;     // total -> K
  Complex shifted;
};
SmallCocylinder small_cocylinder(const Decomposition& dec, const Derivation& D);

}  // namespace hdb
