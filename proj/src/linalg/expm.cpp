#include "nhprobe/linalg/expm.hpp"

#include <array>
#include <cmath>

#include "nhprobe/error.hpp"

namespace nhprobe::linalg {
namespace {

// Backward-error bounds θ_m for double precision (Higham 2005).
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

constexpr std::array<double, 4> kB3{120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kB5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kB7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                    25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kB9{17643225600.0, 8821612800.0, 2075673600.0,
                                     302702400.0,   30270240.0,   2162160.0,
                                     110880.0,      3960.0,       90.0,
                                     1.0};
constexpr std::array<double, 14> kB13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

double one_norm(const ComplexMatrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

struct PadeTerms {
  ComplexMatrix u;  // odd part
  ComplexMatrix v;  // even part
};

// Low orders: U = A·Σ b_{2j+1} A^{2j}, V = Σ b_{2j} A^{2j}.
template <std::size_t N>
PadeTerms pade_low(const ComplexMatrix& a, const std::array<double, N>& b) {
  const Eigen::Index n = a.rows();
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = matmul(a, a);
  ComplexMatrix power = ident;
  ComplexMatrix odd = b[1] * ident;
  ComplexMatrix even = b[0] * ident;
  for (std::size_t j = 2; j + 1 < N; j += 2) {
    power = matmul(power, a2);
    even += b[j] * power;
    odd += b[j + 1] * power;
  }
  return {matmul(a, odd), std::move(even)};
}

PadeTerms pade13(const ComplexMatrix& a) {
  const auto& b = kB13;
  const Eigen::Index n = a.rows();
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = matmul(a, a);
  const ComplexMatrix a4 = matmul(a2, a2);
  const ComplexMatrix a6 = matmul(a4, a2);
  ComplexMatrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  ComplexMatrix u_tail = b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  ComplexMatrix u = matmul(a, ComplexMatrix(matmul(a6, inner_u) + u_tail));
  ComplexMatrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  ComplexMatrix v = matmul(a6, inner_v) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return {std::move(u), std::move(v)};
}

ComplexMatrix pade_solve(const PadeTerms& t) {
  const ComplexMatrix num = t.v + t.u;
  const ComplexMatrix den = t.v - t.u;
  return den.partialPivLu().solve(num);
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& a) {
  require_square_finite(a, "expm");
  const double norm = one_norm(a);

  if (norm <= kTheta3) return pade_solve(pade_low(a, kB3));
  if (norm <= kTheta5) return pade_solve(pade_low(a, kB5));
  if (norm <= kTheta7) return pade_solve(pade_low(a, kB7));
  if (norm <= kTheta9) return pade_solve(pade_low(a, kB9));

  int squarings = 0;
  if (norm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  }
  const ComplexMatrix scaled = a * std::ldexp(1.0, -squarings);
  ComplexMatrix result = pade_solve(pade13(scaled));
  ComplexMatrix tmp;
  for (int s = 0; s < squarings; ++s) {
    matmul_into(result, result, tmp);
    result.swap(tmp);
  }
  return result;
}

}  // namespace nhprobe::linalg
