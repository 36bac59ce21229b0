#pragma once

// Ready-made basis-pursuit inputs with known solutions, used by the CLI and
// the experiment harnesses: an identity spike, an orthonormal Hadamard frame,
// and the multi-minimiser core collapsed to a unique solution and padded with
// an identity block.

#include "bpsolve.hpp"
#include "hadamard.hpp"
#include "multimin.hpp"
#include "solutions.hpp"

namespace exlab {

struct BpSetup {
  std::shared_ptr<InstanceData> data;
  BpClassParams par;
  SolutionSet truth;
};

inline BpSetup identity_setup(std::size_t N) {
  BpSetup s;
  s.data = std::make_shared<InstanceData>();
  s.data->m = N;
  s.data->N = N;
  s.data->y.assign(N, Real(Rat(0)));
  s.data->y[0] = Real(Rat(1));
  s.data->A.assign(N, RealVec(N, Real(Rat(0))));
  for (std::size_t i = 0; i < N; ++i) s.data->A[i][i] = Real(Rat(1));
  s.par = {make_rat(1, 3), Rat(1), Rat(1), Rat(1)};
  RealVec x(N, Real(Rat(0)));
  x[0] = Real(Rat(1));
  s.truth = SolutionSet::point(std::move(x));
  return s;
}

// full orthonormal Hadamard frame; the data is its first column, so the
// unique sparse solution is e1
inline BpSetup hadamard_setup(long n) {
  SignMatrix h = hadamard(n);
  std::size_t N = h.rows.size();
  BpSetup s;
  s.data = std::make_shared<InstanceData>();
  s.data->m = N;
  s.data->N = N;
  Real sc = Real::sqrt_of(Rat(1, static_cast<long>(N)));
  s.data->A.assign(N, RealVec(N));
  s.data->y.assign(N, Real(Rat(0)));
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) s.data->A[i][j] = Rat(h.rows[i][j]) * sc;
    s.data->y[i] = s.data->A[i][0];
  }
  s.par = {make_rat(1, 3), Rat(1), Rat(1), Rat(1)};
  RealVec x(N, Real(Rat(0)));
  x[0] = Real(Rat(1));
  s.truth = SolutionSet::point(std::move(x));
  return s;
}

// several-minimiser construction collapsed to a unique solution by scaling
// the columns off the first endpoint's support, padded with an identity
// block carrying an exact unit signal up to N columns
inline BpSetup multimin_setup(std::size_t s_level, std::size_t N, const Rat& delta) {
  MultiMinimiserInstance inst =
      build_multi_minimiser(s_level, make_rat(7, 5), make_rat(37, 100), delta);
  if (N < inst.N)
    throw std::invalid_argument("multimin_setup: padding target smaller than the core matrix");
  RealMat core = uniqueness_perturbation(inst, 1, pow2(-12));
  BpSetup s;
  s.data = std::make_shared<InstanceData>();
  s.data->m = inst.m + (N - inst.N);
  s.data->N = N;
  s.data->A.assign(s.data->m, RealVec(N, Real(Rat(0))));
  s.data->y.assign(s.data->m, Real(Rat(0)));
  for (std::size_t i = 0; i < inst.m; ++i) {
    for (std::size_t j = 0; j < inst.N; ++j) s.data->A[i][j] = core[i][j];
    s.data->y[i] = Real(inst.y[i]);
  }
  // the noise budget is spent entirely by the core, so every minimiser is
  // exactly 1 on the padded coordinates
  for (std::size_t i = inst.m; i < s.data->m; ++i) {
    s.data->A[i][inst.N + (i - inst.m)] = Real(Rat(1));
    s.data->y[i] = Real(Rat(1));
  }
  std::size_t pad = N - inst.N;
  long b1 = 2;
  while (Rat(b1) * Rat(b1) < Rat(static_cast<long>(pad) + 1)) ++b1;
  s.par = {make_rat(1, 2), Rat(39), Rat(b1), Rat(2)};
  RealVec x = inst.endpoint(1);
  x.resize(N, Real(Rat(1)));
  s.truth = SolutionSet::point(std::move(x));
  return s;
}

}  // namespace exlab
