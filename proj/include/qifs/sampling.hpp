#pragma once

#include "qifs/linalg.hpp"
#include "qifs/rng.hpp"

namespace qifs {

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// standard phase correction.
Mat haar_unitary(int n, Rng& rng);

Vec random_ket(int n, Rng& rng);

/// Random density matrix G G^dag / tr (Ginibre ensemble).
Mat random_density(int n, Rng& rng);

Mat random_hermitian(int n, Rng& rng);

/// Random trace-preserving channel: Kraus blocks of a Haar isometry
/// H_n -> H_n (x) H_k. Generically not unital for k > 1.
std::vector<Mat> random_kraus_set(int n, int k, Rng& rng);

}  // namespace qifs
