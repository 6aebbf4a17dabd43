#pragma once

#include <vector>

namespace rotorchan {

// Integer-order Bessel J_n(x), any sign of n and x, relative accuracy
// better than 1e-12 away from zeros of J_n for |x| <= 1000, |n| <= 2000.
double bessel_j(int n, double x);

// J_0(x) .. J_nmax(x) in one pass, x >= 0. Backward (Miller) recurrence
// normalized by J_0 + 2*sum_k J_{2k} = 1; small arguments fall back to the
// power series, which is cancellation-free there.
std::vector<double> bessel_j_array(int nmax, double x);

}  // namespace rotorchan
