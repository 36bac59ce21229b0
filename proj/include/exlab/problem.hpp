#pragma once

// Problem kinds, regularisation parameters and concrete problem instances.
//
// An instance carries its data (y, A) with exact coordinates; algorithms
// never see these directly but only through a Delta1Oracle (oracle.hpp).
// Coordinates are indexed flat: j in [0, m) addresses y_j, and
// j = m + row*N + col addresses A_{row,col}.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "real.hpp"

namespace exlab {

enum class Kind { LP, BPl1, ULl1, CL, BPTV, ULTV, LPExit, LPDecision };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::LP: return "LP";
    case Kind::BPl1: return "BPl1";
    case Kind::ULl1: return "ULl1";
    case Kind::CL: return "CL";
    case Kind::BPTV: return "BPTV";
    case Kind::ULTV: return "ULTV";
    case Kind::LPExit: return "LPExit";
    case Kind::LPDecision: return "LPDecision";
  }
  return "?";
}

inline Kind kind_from_name(const std::string& s) {
  for (Kind k : {Kind::LP, Kind::BPl1, Kind::ULl1, Kind::CL, Kind::BPTV, Kind::ULTV,
                 Kind::LPExit, Kind::LPDecision})
    if (s == kind_name(k)) return k;
  throw std::invalid_argument("unknown problem kind: " + s);
}

inline bool is_tv(Kind k) { return k == Kind::BPTV || k == Kind::ULTV; }

// delta in [0,1], lambda in (0,1/3], tau in [1/2,2]; only the parameter
// relevant to the kind is consulted.
struct RegParams {
  Rat delta{0};
  Rat lambda{1, 3};
  Rat tau{1, 2};

  void validate(Kind k) const {
    switch (k) {
      case Kind::BPl1:
      case Kind::BPTV:
        if (delta < 0 || delta > 1) throw std::invalid_argument("delta outside [0,1]");
        break;
      case Kind::ULl1:
      case Kind::ULTV:
        if (lambda <= 0 || lambda > make_rat(1, 3))
          throw std::invalid_argument("lambda outside (0,1/3]");
        break;
      case Kind::CL:
        if (tau < make_rat(1, 2) || tau > 2) throw std::invalid_argument("tau outside [1/2,2]");
        break;
      default:
        break;
    }
  }
};

using RealVec = std::vector<Real>;
using RealMat = std::vector<std::vector<Real>>;

// Exact data of one input (y, A).
struct InstanceData {
  std::size_t m = 0, N = 0;
  RealVec y;   // size m
  RealMat A;   // m rows of N entries

  std::size_t coord_count() const { return m + m * N; }

  const Real& coord(std::size_t j) const {
    if (j < m) return y[j];
    j -= m;
    if (j < m * N) return A[j / N][j % N];
    throw std::out_of_range("InstanceData::coord");
  }
};

struct ProblemInstance {
  Kind kind = Kind::LP;
  std::size_t m = 0, N = 0;
  RegParams reg;
  long p_norm = -1;  // -1 encodes the sup norm; otherwise p >= 1
  std::shared_ptr<const InstanceData> data;
};

}  // namespace exlab
