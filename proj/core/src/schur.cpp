#include "potapov/types.hpp"

#include <Eigen/Eigenvalues>

namespace potapov {

SchurDecomposition complex_schur(const CMatrix& m) {
    Eigen::ComplexSchur<CMatrix> schur(m);
    return {schur.matrixU(), schur.matrixT()};
}

CVector eigenvalues(const CMatrix& m) {
    if (m.size() == 0) {
        return {};
    }
    Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    return es.eigenvalues();
}

}  // namespace potapov
