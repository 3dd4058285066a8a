// SPDX-License-Identifier: Apache-2.0
//
// superdir - superdirective beamforming for compact linear antenna arrays
// Copyright (C) 2026 The superdir authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Independent reference computations used by the unit tests. Nothing here calls
// into the library.

#ifndef SUPERDIR_TEST_ORACLES_HPP
#define SUPERDIR_TEST_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double k = 2.0 * pi;
    inline constexpr double eta = 376.730313668;

    // Composite Simpson rule with n (even) panels
    template <typename T>
    T simpson(const std::function<T(double)> &f, double a, double b, int n)
    {
        const double h = (b - a) / n;
        T sum = f(a) + f(b);
        for (int i = 1; i < n; ++i)
            sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        return sum * (h / 3.0);
    }

    // J0 by its power series (summed in long double) for moderate arguments and by
    // Simpson integration of (1/pi) int_0^pi cos(x sin t) dt where the series cancels badly
    inline double bessel_j0(double x)
    {
        if (std::abs(x) > 8.0)
        {
            const std::function<double(double)> f = [x](double t) { return std::cos(x * std::sin(t)); };
            return simpson(f, 0.0, pi, 20000) / pi;
        }
        long double term = 1.0L, sum = 1.0L;
        const long double q = static_cast<long double>(x) * x / 4.0L;
        for (int n = 1; n < 200; ++n)
        {
            term *= -q / (static_cast<long double>(n) * n);
            sum += term;
            if (std::fabs(term) < 1e-22L * std::fabs(sum) && n > q)
                break;
        }
        return static_cast<double>(sum);
    }

    // Induced-EMF mutual impedance of two side-by-side half-wave dipoles by direct
    // integration of the near-field E_z of one along the sinusoidal current of the other
    inline std::complex<double> emf_mutual_impedance(double d, int panels = 20000)
    {
        using cd = std::complex<double>;
        const double h = 0.25; // half length
        const std::function<cd(double)> integrand = [&](double z)
        {
            const double r1 = std::sqrt(d * d + (z - h) * (z - h));
            const double r2 = std::sqrt(d * d + (z + h) * (z + h));
            const cd field = std::exp(cd(0.0, -k * r1)) / r1 + std::exp(cd(0.0, -k * r2)) / r2;
            return field * std::sin(k * (h - std::abs(z)));
        };
        return cd(0.0, eta / (4.0 * pi)) * simpson(integrand, -h, h, panels);
    }

    // |sum_m exp(j k m d sin(phi))|^2 / M^2 for an M-element array on the y axis, in the H-plane
    inline double array_factor_power(int m, double d, double phi)
    {
        std::complex<double> s = 0.0;
        for (int i = 0; i < m; ++i)
            s += std::polar(1.0, k * i * d * std::sin(phi));
        return std::norm(s) / (static_cast<double>(m) * m);
    }

    // Root of f on [a, b] by bisection; f(a) and f(b) must differ in sign
    inline double bisect(const std::function<double(double)> &f, double a, double b)
    {
        double fa = f(a);
        for (int i = 0; i < 200; ++i)
        {
            const double mid = 0.5 * (a + b);
            const double fm = f(mid);
            if ((fm < 0) == (fa < 0))
            {
                a = mid;
                fa = fm;
            }
            else
                b = mid;
        }
        return 0.5 * (a + b);
    }
}

#endif
