#pragma once

// Classical fixed-step fourth-order Runge-Kutta, written from the textbook
// tableau and kept deliberately free of any integrator code from the library,
// so it can serve as an independent cross-check in tests.

#include <functional>
#include <vector>

namespace testsupport {

using Field = std::function<void(double t, const std::vector<double>& z, std::vector<double>& dz)>;

inline std::vector<double> rk4(const Field& f, std::vector<double> z, double t0, double t1,
                               long steps) {
    const std::size_t m = z.size();
    const double h = (t1 - t0) / static_cast<double>(steps);
    std::vector<double> k1(m), k2(m), k3(m), k4(m), tmp(m);
    double t = t0;
    for (long s = 0; s < steps; ++s) {
        f(t, z, k1);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
        f(t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
        f(t + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = z[i] + h * k3[i];
        f(t + h, tmp, k4);
        for (std::size_t i = 0; i < m; ++i)
            z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t = t0 + h * static_cast<double>(s + 1);
    }
    return z;
}

}  // namespace testsupport
