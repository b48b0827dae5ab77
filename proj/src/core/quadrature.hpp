#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace oscillab {

// Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr std::array<double, 16> kGl16Nodes = {
    -9.89400934991649939e-01, -9.44575023073232600e-01, -8.65631202387831755e-01,
    -7.55404408355002999e-01, -6.17876244402643771e-01, -4.58016777657227370e-01,
    -2.81603550779258915e-01, -9.50125098376374544e-02, 9.50125098376374544e-02,
    2.81603550779258915e-01,  4.58016777657227370e-01,  6.17876244402643771e-01,
    7.55404408355002999e-01,  8.65631202387831755e-01,  9.44575023073232600e-01,
    9.89400934991649939e-01};
inline constexpr std::array<double, 16> kGl16Weights = {
    2.71524594117540374e-02, 6.22535239386477063e-02, 9.51585116824925914e-02,
    1.24628971255534030e-01, 1.49595988816576764e-01, 1.69156519395002619e-01,
    1.82603415044923612e-01, 1.89450610455068585e-01, 1.89450610455068585e-01,
    1.82603415044923612e-01, 1.69156519395002619e-01, 1.49595988816576764e-01,
    1.24628971255534030e-01, 9.51585116824925914e-02, 6.22535239386477063e-02,
    2.71524594117540374e-02};

inline constexpr std::array<double, 32> kGl32Nodes = {
    -9.97263861849481570e-01, -9.85611511545268382e-01, -9.64762255587506390e-01,
    -9.34906075937739667e-01, -8.96321155766052202e-01, -8.49367613732569970e-01,
    -7.94483795967942386e-01, -7.32182118740289711e-01, -6.63044266930215231e-01,
    -5.87715757240762304e-01, -5.06899908932229359e-01, -4.21351276130635333e-01,
    -3.31868602282127667e-01, -2.39287362252137065e-01, -1.44471961582796488e-01,
    -4.83076656877383104e-02, 4.83076656877383104e-02,  1.44471961582796488e-01,
    2.39287362252137065e-01,  3.31868602282127667e-01,  4.21351276130635333e-01,
    5.06899908932229359e-01,  5.87715757240762304e-01,  6.63044266930215231e-01,
    7.32182118740289711e-01,  7.94483795967942386e-01,  8.49367613732569970e-01,
    8.96321155766052202e-01,  9.34906075937739667e-01,  9.64762255587506390e-01,
    9.85611511545268382e-01,  9.97263861849481570e-01};
inline constexpr std::array<double, 32> kGl32Weights = {
    7.01861000946929839e-03, 1.62743947309059653e-02, 2.53920653092624266e-02,
    3.42738629130216257e-02, 4.28358980222264263e-02, 5.09980592623762441e-02,
    5.86840934785357038e-02, 6.58222227763617523e-02, 7.23457941088484491e-02,
    7.81938957870703111e-02, 8.33119242269468457e-02, 8.76520930044039082e-02,
    9.11738786957638631e-02, 9.38443990808045664e-02, 9.56387200792748332e-02,
    9.65400885147278121e-02, 9.65400885147278121e-02, 9.56387200792748332e-02,
    9.38443990808045664e-02, 9.11738786957638631e-02, 8.76520930044039082e-02,
    8.33119242269468457e-02, 7.81938957870703111e-02, 7.23457941088484491e-02,
    6.58222227763617523e-02, 5.86840934785357038e-02, 5.09980592623762441e-02,
    4.28358980222264263e-02, 3.42738629130216257e-02, 2.53920653092624266e-02,
    1.62743947309059653e-02, 7.01861000946929839e-03};

// Integrates fn over [a, b] with one n-point Gauss-Legendre rule.
template <std::size_t N, typename Fn>
auto gauss_panel(const std::array<double, N>& nodes, const std::array<double, N>& weights,
                 double a, double b, Fn&& fn) -> decltype(fn(0.0)) {
  double mid = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  decltype(fn(0.0)) acc{};
  for (std::size_t i = 0; i < N; ++i) acc += weights[i] * fn(mid + half * nodes[i]);
  return acc * half;
}

template <typename Fn>
auto gl16(double a, double b, Fn&& fn) {
  return gauss_panel(kGl16Nodes, kGl16Weights, a, b, fn);
}

template <typename Fn>
auto gl32(double a, double b, Fn&& fn) {
  return gauss_panel(kGl32Nodes, kGl32Weights, a, b, fn);
}

// Refines a sign change of fn bracketed by [lo, hi] down to |hi-lo| <= tol.
template <typename Fn>
double bisect(Fn&& fn, double lo, double hi, double flo, double tol) {
  for (int it = 0; it < 80 && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oscillab
