#pragma once

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include "bulksurf/disc/operators.hpp"

namespace bulksurf {

struct SolveResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Conjugate gradients (Jacobi preconditioned) for a symmetric positive
/// definite operator; stops once |b - A x| <= tol |b|.
inline SolveResult solve_spd(const SparseOperator& op, const Eigen::VectorXd& rhs, double tol,
                             int max_iter, const Eigen::VectorXd* guess = nullptr) {
  SolveResult out;
  if (rhs.squaredNorm() == 0.0) {
    out.x = Eigen::VectorXd::Zero(rhs.size());
    out.converged = true;
    return out;
  }
  Eigen::ConjugateGradient<SparseOperator, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(tol);
  cg.setMaxIterations(max_iter);
  cg.compute(op);
  if (guess)
    out.x = cg.solveWithGuess(rhs, *guess);
  else
    out.x = cg.solve(rhs);
  out.iterations = static_cast<int>(cg.iterations());
  out.relative_residual = (rhs - op * out.x).norm() / rhs.norm();
  out.converged = cg.info() == Eigen::Success;
  return out;
}

}  // namespace bulksurf
