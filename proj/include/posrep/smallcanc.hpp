#pragma once

// Finite presentations over x, y, …, pieces of the symmetrized relator set,
// the C'(λ) condition, counts of cyclically reduced words and seeded
// samplers for random presentations.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "posrep/freegroup.hpp"

namespace posrep {

using Rational = boost::rational<std::int64_t>;

/// "a/b", an integer, or a finite decimal such as "0.1".
Rational parse_rational(std::string_view text);
std::string to_string(Rational const& r);

class Presentation {
 public:
  Presentation() = default;
  /// Relators must be nontrivial, cyclically reduced and use generators ≤ n.
  Presentation(int generators, std::vector<ReducedWord> relators);

  /// "<x,y | x y X Y, x^3>"; the generators must be x, y, … in order.
  static Presentation parse(std::string_view text);
  std::string to_string() const;

  int generators() const { return n_; }
  std::vector<ReducedWord> const& relators() const { return relators_; }

 private:
  int n_ = 0;
  std::vector<ReducedWord> relators_;
};

/// One element of the symmetrized set: relator `relator`, rotated left by
/// `shift`, inverted when `inverted`. Different positions count as different
/// elements even when they spell the same word.
struct SymmetrizedElement {
  int relator = 0;
  int shift = 0;
  bool inverted = false;
  std::vector<int> letters;
};

std::vector<SymmetrizedElement> symmetrize(Presentation const& p);

/// Piece length of two distinct elements: their common prefix, capped at one
/// less than either length.
int piece_length(SymmetrizedElement const& a, SymmetrizedElement const& b);

struct CancellationReport {
  std::vector<int> relator_lengths;
  int min_length = 0;
  int max_piece = 0;
  /// Largest piece seen by each relator.
  std::vector<int> relator_max_piece;
  /// max over pairs of piece / min(|r₁|, |r₂|); C'(λ) holds iff this is < λ.
  Rational worst_ratio{0};
  Rational lambda{1, 6};
  bool satisfies = false;               // C'(lambda)
  bool c_one_sixth = false;             // C'(1/6)
  bool cayley_representable = false;    // C'(1/6), every relator ≥ 22, two generators
  bool proper_power_representable = false;  // one relator r^m, m ≥ 2, |r^m| ≥ 22, two generators
};

/// Pieces from the symmetrized elements in sorted order, where the common
/// prefix of two elements is the minimum adjacent common prefix between them.
CancellationReport check_c_lambda(Presentation const& p, Rational lambda = Rational(1, 6));
int max_piece(Presentation const& p);

using BigCount = boost::multiprecision::cpp_int;

struct CyclicCount {
  BigCount exact;       // c_l
  BigCount cumulative;  // c_1 + … + c_l
};

/// Cyclically reduced words of length l over n generators, as trace(A^l) for
/// the letter-transition matrix A.
CyclicCount count_cyclically_reduced(int n, int l);

/// Uniform cyclically reduced word of length exactly `length` (rejection
/// from uniform reduced words).
ReducedWord sample_cyclically_reduced(int n, int length, std::mt19937_64& rng);

struct FewRelatorOptions {
  int generators = 2;
  int relators = 2;
  int max_length = 60;
  int count = 200;
  std::uint64_t seed = 7;
  int threads = 1;
};

/// Each presentation uses its own stream seeded from (seed, index), so the
/// result does not depend on the thread count.
std::vector<Presentation> sample_few_relators(FewRelatorOptions const& o);

struct DensitySample {
  Presentation presentation;
  std::uint64_t relator_count = 0;  // ⌊(2n−1)^{dl}⌋
  /// d < 1/5 with two generators and C'(1/6) verified on the sample.
  bool density_flag = false;
};

DensitySample sample_density(int n, Rational d, int length, std::uint64_t seed,
                             std::uint64_t max_relators = 100000);

/// ⌊(2n−1)^{dl}⌋, exact.
BigCount density_relator_count(int n, Rational d, int length);

struct FewRelatorSummary {
  int samples = 0;
  int representable = 0;   // C'(1/6) with every relator of length ≥ 22
  int c_one_sixth = 0;
  int short_relator = 0;   // some relator of length ≤ 21
};

FewRelatorSummary summarize(std::vector<Presentation> const& ps);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace posrep
