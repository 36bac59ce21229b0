#pragma once

// The Delta^1-information model.  An oracle answers (coordinate index j,
// precision n) with an element of D_n within 2^-n of the true coordinate,
// and keeps a ledger of the digits it has served.  Algorithms receive
// nothing but an oracle handle plus the public metadata (kind, m, N,
// regularisation parameters).
//
// Two canonical oracles are provided here:
//   RoundingOracle    — rounds the exact coordinates of one instance;
//   ForkOracle        — answers from a limit instance up to a commitment
//                       depth and from a nearby family member beyond it
//                       (building block of the staircase adversary).
// The staircase schedule itself (StaircaseOracle, adversary_fork) lives in
// adversary.hpp since it needs the family constructions.

#include <atomic>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyadic.hpp"
#include "problem.hpp"

namespace exlab {

struct DigitAccount {
  long max_precision = 0;      // D: largest n served so far
  unsigned long long queries = 0;
  unsigned long long total_digits = 0;  // sum of served precisions
};

struct TranscriptEntry {
  std::size_t j;
  long n;
  Dyadic answer;
};

using Transcript = std::vector<TranscriptEntry>;

inline std::string serialize(const Transcript& t) {
  std::ostringstream os;
  for (const auto& e : t)
    os << e.j << ' ' << e.n << ' ' << e.answer.mantissa() << ' ' << e.answer.scale() << '\n';
  return os.str();
}

class Delta1Oracle {
 public:
  virtual ~Delta1Oracle() = default;

  Dyadic query(std::size_t j, long n) {
    if (n < 0) throw std::invalid_argument("query: negative precision");
    Dyadic a = answer(j, n);
    {
      std::lock_guard<std::mutex> lock(mu_);
      account_.queries += 1;
      account_.total_digits += static_cast<unsigned long long>(n);
      if (n > account_.max_precision) account_.max_precision = n;
      if (record_) transcript_.push_back({j, n, a});
    }
    return a;
  }

  DigitAccount account() const {
    std::lock_guard<std::mutex> lock(mu_);
    return account_;
  }

  void reset_account() {
    std::lock_guard<std::mutex> lock(mu_);
    account_ = DigitAccount{};
    transcript_.clear();
  }

  void set_recording(bool on) {
    std::lock_guard<std::mutex> lock(mu_);
    record_ = on;
  }

  Transcript transcript() const {
    std::lock_guard<std::mutex> lock(mu_);
    return transcript_;
  }

 protected:
  // Implementation hook: must return a value in D_n within 2^-n of the true
  // coordinate.  Must be deterministic in (j, n).
  virtual Dyadic answer(std::size_t j, long n) const = 0;

 private:
  mutable std::mutex mu_;
  DigitAccount account_;
  Transcript transcript_;
  bool record_ = false;
};

using OracleHandle = std::shared_ptr<Delta1Oracle>;

class RoundingOracle final : public Delta1Oracle {
 public:
  explicit RoundingOracle(std::shared_ptr<const InstanceData> data) : data_(std::move(data)) {
    if (!data_) throw std::invalid_argument("RoundingOracle: null data");
  }

 protected:
  Dyadic answer(std::size_t j, long n) const override {
    return approx_dyadic(data_->coord(j), n);
  }

 private:
  std::shared_ptr<const InstanceData> data_;
};

// Serves the limit instance for precisions <= commit_depth and the target
// instance beyond.  Sound (answers within 2^-n of the *target* coordinates)
// provided |target - limit| <= 4^-(commit_depth+1) coordinate-wise, which
// the family constructions guarantee; validity is also asserted per query.
class ForkOracle final : public Delta1Oracle {
 public:
  ForkOracle(std::shared_ptr<const InstanceData> limit,
             std::shared_ptr<const InstanceData> target, long commit_depth)
      : limit_(std::move(limit)), target_(std::move(target)), depth_(commit_depth) {
    if (!limit_ || !target_) throw std::invalid_argument("ForkOracle: null data");
  }

  long commit_depth() const { return depth_; }

 protected:
  Dyadic answer(std::size_t j, long n) const override {
    const Real& truth = target_->coord(j);
    if (n <= depth_) {
      Dyadic a = approx_dyadic(limit_->coord(j), n);
      // certify validity for the target coordinate
      Real err = (truth - Real(to_rat(a))).abs();
      if (!(err <= Real(pow2(-n))))
        throw std::logic_error("ForkOracle: limit answer invalid for target at this depth");
      return a;
    }
    return approx_dyadic(truth, n);
  }

 private:
  std::shared_ptr<const InstanceData> limit_, target_;
  long depth_;
};

inline OracleHandle make_oracle(const ProblemInstance& inst) {
  return std::make_shared<RoundingOracle>(inst.data);
}

}  // namespace exlab
