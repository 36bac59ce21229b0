#pragma once

// Staircase adversary: an oracle that serves the digits of a limit input
// alpha = beta = 1/2 while an entire family of distinct inputs remains
// consistent with every answer given so far.  After a reader with digit
// budget M walks away, adversary_fork picks two family members that agree
// with the whole transcript bit-for-bit yet have solution sets a fixed
// distance apart.
//
// Family members perturb one matrix entry by 4^-q, so any answer at
// precision n <= 2q - 2 rounds to the same dyadic for the limit and the
// member (nearest rounding moves by < 2^-(n+1)).

#include <memory>
#include <stdexcept>
#include <utility>

#include "families.hpp"
#include "oracle.hpp"
#include "solutions.hpp"

namespace exlab {

struct FamilyExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BreakdownMode { Strong, Weak };

// Indexed family {iota^j_n} with limit iota^0 at the corner (1/2, 1/2).
// Side 1 lowers beta (so alpha > beta), side 2 lowers alpha.  For the TV
// kinds an index shift n0 keeps the perturbed value inside the admissible
// interval [r_K, 1/2] (resp. [s_K, 1/2]) already at n = 1.
struct BreakdownFamily {
  Kind kind = Kind::LP;
  long K = 1;
  std::size_t m = 4, N = 5;
  RegParams reg;
  BreakdownMode mode = BreakdownMode::Strong;
  long depth = 64;  // largest precision the staircase will commit to
  long n0 = 0;

  // digit level of the shared y vector (strong: K, weak: K - 1)
  long level() const { return mode == BreakdownMode::Strong ? K : K - 1; }

  Rat separation() const { return 2 * pow10(-level()); }

  FamilyPoint limit() const { return point(make_rat(1, 2), make_rat(1, 2)); }

  FamilyPoint member(int side, long n) const {
    if (side != 1 && side != 2) throw std::invalid_argument("member: side must be 1 or 2");
    if (n < 1) throw std::invalid_argument("member: n >= 1 required");
    Rat perturbed = make_rat(1, 2) - pow2(-2 * (n + n0));
    if (side == 1) return point(make_rat(1, 2), perturbed);
    return point(perturbed, make_rat(1, 2));
  }

  SolutionSet target(int side, long n) const { return solve_closed_form(member(side, n)); }

 private:
  FamilyPoint point(const Rat& alpha, const Rat& beta) const {
    FamilyPoint p = strong_point(kind, level(), m, N, alpha, beta, reg);
    p.K = K;
    return p;
  }
};

inline BreakdownFamily build_breakdown_family(Kind kind, long K, std::size_t m, std::size_t N,
                                              BreakdownMode mode, const RegParams& reg = {},
                                              long depth = 64) {
  if (mode == BreakdownMode::Strong ? K < 1 : K < 2)
    throw std::invalid_argument("build_breakdown_family: K >= 1 (strong) / K >= 2 (weak)");
  BreakdownFamily fam;
  fam.kind = kind;
  fam.K = K;
  fam.m = m;
  fam.N = N;
  fam.reg = reg;
  fam.mode = mode;
  fam.depth = depth;
  if (is_tv(kind)) {
    // shift until 1/2 - 4^-(1+n0) clears the admissible lower endpoint
    Real lo = admissible_lower(kind, reg, fam.level());
    while (!(Real(make_rat(1, 2) - pow2(-2 * (1 + fam.n0))) >= lo)) {
      ++fam.n0;
      if (fam.n0 > 64) throw std::invalid_argument("build_breakdown_family: no admissible shift");
    }
  }
  // every member must round to the limit at all committed precisions:
  // |member - limit| = 4^-(n+n0) <= 4^-(1+n0); enforced again per query by
  // the fork verification, but validate the family is nonterminal here.
  fam.member(1, 1);
  fam.member(2, 1);
  return fam;
}

// Serves the limit instance verbatim up to the commitment depth and refuses
// to answer beyond it: the paper's family is infinite, the artifact's is
// not, and degrading silently would break the indistinguishability claim.
class StaircaseOracle final : public Delta1Oracle {
 public:
  explicit StaircaseOracle(BreakdownFamily fam)
      : fam_(std::move(fam)),
        limit_(std::make_shared<const InstanceData>(*fam_.limit().instance().data)) {
    set_recording(true);
  }

  const BreakdownFamily& family() const { return fam_; }

 protected:
  Dyadic answer(std::size_t j, long n) const override {
    if (n > fam_.depth)
      throw FamilyExhausted("staircase oracle: precision exceeds commitment depth");
    return approx_dyadic(limit_->coord(j), n);
  }

 private:
  BreakdownFamily fam_;
  std::shared_ptr<const InstanceData> limit_;
};

// Replay a transcript against exact instance data; true iff every recorded
// answer is what nearest rounding of this instance would have produced.
inline bool replay_matches(const InstanceData& data, const Transcript& transcript) {
  for (const auto& e : transcript)
    if (!(approx_dyadic(data.coord(e.j), e.n) == e.answer)) return false;
  return true;
}

// Given the digits already served (max precision M), return two instances
// that answer the entire transcript identically yet whose solution sets are
// >= kappa apart.  Fork index q = M + 1 (plus the family's TV shift) gives
// perturbation 4^-(q+n0) <= 2^-(M+2), half a rounding gap below any served
// precision.
inline std::pair<ProblemInstance, ProblemInstance> adversary_fork(const StaircaseOracle& stair,
                                                                  const Transcript& transcript,
                                                                  const Rat& kappa) {
  const BreakdownFamily& fam = stair.family();
  long M = 0;
  for (const auto& e : transcript)
    if (e.n > M) M = e.n;
  if (M > fam.depth) throw FamilyExhausted("adversary_fork: transcript deeper than the family");

  long q = M + 1;
  FamilyPoint a = fam.member(1, q), b = fam.member(2, q);
  ProblemInstance ia = a.instance(), ib = b.instance();
  if (!replay_matches(*ia.data, transcript) || !replay_matches(*ib.data, transcript))
    throw std::logic_error("adversary_fork: fork instances disagree with the transcript");

  RatIv gap = inf_set_distance(solve_closed_form(a), solve_closed_form(b), /*p=*/-1);
  if (!(gap.lo >= kappa))
    throw std::invalid_argument("adversary_fork: requested separation exceeds the family's");
  return {std::move(ia), std::move(ib)};
}

}  // namespace exlab
