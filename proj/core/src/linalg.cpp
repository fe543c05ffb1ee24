#include "potapov/types.hpp"

#include <Eigen/SVD>

namespace potapov {

double spectral_norm(const CMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::BDCSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double unitarity_defect(const CMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return (m * m.adjoint() - CMatrix::Identity(m.rows(), m.rows())).norm();
}

CMatrix polar_unitary(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

double spectral_radius(const CMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return eigenvalues(m).cwiseAbs().maxCoeff();
}

}  // namespace potapov
