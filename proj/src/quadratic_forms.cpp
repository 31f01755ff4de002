#include "toral/quadratic_forms.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "toral/errors.hpp"

namespace toral {

namespace {

using i128 = __int128;

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long mod_pos(i128 a, long long m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<long long>(r);
}

// x a + y b = g >= 0
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const long long q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

long long isqrt(long long n) {
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(long long n) { return n >= 0 && isqrt(n) * isqrt(n) == n; }

bool primitive(long long a, long long b, long long c) { return std::gcd(std::gcd(a, b), c) == 1; }

void require_discriminant(long long d) {
    if (d % 4 != 0 && ((d % 4) + 4) % 4 != 1) throw DomainError("discriminant must be 0 or 1 mod 4");
    if (d == 0 || is_square(d)) throw DomainError("discriminant must be a non-square");
}

} // namespace

std::string BinaryQuadraticForm::to_string() const {
    std::ostringstream os;
    os << '(' << a << ',' << b << ',' << c << ')';
    return os.str();
}

bool is_fundamental_discriminant(long long d) {
    if (d == 0 || d == 1) return false;
    const long long m4 = ((d % 4) + 4) % 4;
    auto squarefree = [](long long m) {
        m = std::llabs(m);
        for (long long p = 2; p * p <= m; ++p)
            if (m % (p * p) == 0) return false;
        return true;
    };
    if (m4 == 1) return squarefree(d);
    if (m4 != 0) return false;
    const long long m = d / 4;
    const long long mm4 = ((m % 4) + 4) % 4;
    return (mm4 == 2 || mm4 == 3) && squarefree(m);
}

BinaryQuadraticForm principal_form(long long d) {
    require_discriminant(d);
    const long long b0 = (d % 2 == 0) ? 0 : 1;
    return {1, b0, (b0 * b0 - d) / 4};
}

BinaryQuadraticForm inverse_form(const BinaryQuadraticForm& f) { return {f.a, -f.b, f.c}; }

BinaryQuadraticForm compose_unreduced(const BinaryQuadraticForm& f, const BinaryQuadraticForm& g) {
    const long long d = f.discriminant();
    if (g.discriminant() != d) throw DomainError("compose: discriminants differ");
    const long long s = (f.b + g.b) / 2;
    long long x1, y1, x2, y2;
    const long long e1 = ext_gcd(f.a, g.a, x1, y1);
    const long long e = ext_gcd(e1, s, x2, y2);
    // mu f.a + nu g.a + omega s = e
    const long long mu = x1 * x2, nu = y1 * x2, omega = y2;
    const long long big_a = (f.a / e) * (g.a / e);
    const long long mod = 2 * std::llabs(big_a);
    const i128 num = static_cast<i128>(mu) * f.a * g.b + static_cast<i128>(nu) * g.a * f.b +
                     static_cast<i128>(omega) * ((static_cast<i128>(f.b) * g.b + d) / 2);
    long long big_b = mod_pos(num / e, mod);
    if (big_b > std::llabs(big_a)) big_b -= mod;
    const i128 cnum = static_cast<i128>(big_b) * big_b - d;
    const i128 cden = static_cast<i128>(4) * big_a;
    if (cnum % cden != 0) throw DomainError("compose: inconsistent forms");
    return {big_a, big_b, static_cast<long long>(cnum / cden)};
}

bool is_reduced_definite(const BinaryQuadraticForm& f) {
    if (f.a <= 0 || f.discriminant() >= 0) return false;
    if (!(std::llabs(f.b) <= f.a && f.a <= f.c)) return false;
    if ((std::llabs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

BinaryQuadraticForm reduce_definite(BinaryQuadraticForm f) {
    if (f.discriminant() >= 0 || f.a <= 0) throw DomainError("reduce_definite: need a positive definite form");
    while (true) {
        if (f.b > f.a || f.b <= -f.a) {
            // translate b into (-a, a]
            const long long k = floor_div(f.a - f.b, 2 * f.a);
            const long long nb = f.b + 2 * k * f.a;
            f.c = f.c + k * f.b + k * k * f.a;
            f.b = nb;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

std::vector<BinaryQuadraticForm> reduced_definite_forms(long long d) {
    if (d >= 0) throw DomainError("reduced_definite_forms: need D < 0");
    require_discriminant(d);
    std::vector<BinaryQuadraticForm> out;
    const long long amax = isqrt(-d / 3);
    for (long long a = 1; a <= amax; ++a)
        for (long long b = -a + 1; b <= a; ++b) {
            const long long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const long long c = num / (4 * a);
            const BinaryQuadraticForm f{a, b, c};
            if (is_reduced_definite(f) && primitive(a, b, c)) out.push_back(f);
        }
    const BinaryQuadraticForm one = principal_form(d);
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        if ((x == one) != (y == one)) return x == one;
        return std::make_tuple(x.a, std::llabs(x.b), -x.b) < std::make_tuple(y.a, std::llabs(y.b), -y.b);
    });
    return out;
}

bool is_reduced_indefinite(const BinaryQuadraticForm& f) {
    const long long d = f.discriminant();
    if (d <= 0 || f.a == 0) return false;
    // 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b, decided in integers
    if (f.b <= 0 || static_cast<i128>(f.b) * f.b >= d) return false;
    const long long t = 2 * std::llabs(f.a);
    const bool below = (t <= f.b) || static_cast<i128>(t - f.b) * (t - f.b) < d;
    const bool above = static_cast<i128>(t + f.b) * (t + f.b) > d;
    return below && above;
}

BinaryQuadraticForm rho(const BinaryQuadraticForm& f) {
    const long long d = f.discriminant();
    if (d <= 0 || f.c == 0) throw DomainError("rho: need an indefinite form with c != 0");
    const long long r = isqrt(d);
    const long long m = 2 * std::llabs(f.c);
    // b' = -b mod 2|c| in the normalization range
    long long nb;
    if (std::llabs(f.c) > r) {
        // -|c| < b' <= |c|
        nb = mod_pos(-static_cast<i128>(f.b), m);
        if (nb > std::llabs(f.c)) nb -= m;
    } else {
        // r - 2|c| < b' <= r  (sqrt D irrational, so this is sqrt D - 2|c| < b' < sqrt D)
        nb = r - mod_pos(static_cast<i128>(r) + f.b, m);
    }
    const i128 num = static_cast<i128>(nb) * nb - d;
    return {f.c, nb, static_cast<long long>(num / (4 * static_cast<i128>(f.c)))};
}

BinaryQuadraticForm reduce_indefinite(BinaryQuadraticForm f) {
    if (f.discriminant() <= 0 || is_square(f.discriminant())) throw DomainError("reduce_indefinite: need non-square D > 0");
    for (int guard = 0; guard < 100000; ++guard) {
        if (is_reduced_indefinite(f)) return f;
        f = rho(f);
    }
    throw ConvergenceError("reduce_indefinite did not terminate", 0.0);
}

std::vector<BinaryQuadraticForm> indefinite_cycle(const BinaryQuadraticForm& reduced) {
    if (!is_reduced_indefinite(reduced)) throw DomainError("indefinite_cycle: form not reduced");
    std::vector<BinaryQuadraticForm> cyc{reduced};
    BinaryQuadraticForm f = rho(reduced);
    while (f != reduced) {
        cyc.push_back(f);
        f = rho(f);
        if (cyc.size() > 1000000) throw ConvergenceError("indefinite_cycle too long", 0.0);
    }
    return cyc;
}

std::vector<std::vector<BinaryQuadraticForm>> indefinite_cycles(long long d) {
    if (d <= 0) throw DomainError("indefinite_cycles: need D > 0");
    require_discriminant(d);
    const long long r = isqrt(d);
    std::set<BinaryQuadraticForm> seen;
    std::vector<std::vector<BinaryQuadraticForm>> out;
    // start from the principal cycle so that class 0 is the identity
    std::vector<BinaryQuadraticForm> all;
    for (long long b = 1; b <= r; ++b) {
        if ((b * b - d) % 4 != 0) continue;
        const long long ac = (b * b - d) / 4; // negative
        for (long long a = 1; a <= r; ++a) {
            if (ac % a != 0) continue;
            for (long long sa : {a, -a}) {
                const BinaryQuadraticForm f{sa, b, ac / sa};
                if (is_reduced_indefinite(f) && primitive(f.a, f.b, f.c)) all.push_back(f);
            }
        }
    }
    const BinaryQuadraticForm p = reduce_indefinite(principal_form(d));
    std::vector<BinaryQuadraticForm> order{p};
    std::sort(all.begin(), all.end());
    order.insert(order.end(), all.begin(), all.end());
    for (const auto& f : order) {
        if (seen.count(f)) continue;
        auto cyc = indefinite_cycle(f);
        for (const auto& g : cyc) seen.insert(g);
        out.push_back(std::move(cyc));
    }
    return out;
}

BinaryQuadraticForm reduce(const BinaryQuadraticForm& f) {
    return f.discriminant() < 0 ? reduce_definite(f) : reduce_indefinite(f);
}

FundamentalUnit fundamental_unit(long long d) {
    if (d <= 0) throw DomainError("fundamental_unit: need D > 0");
    require_discriminant(d);
    const bool odd = (d % 2 != 0);
    const long long r = isqrt(d);
    // alpha = (P + sqrt D) / Q with Q | D - P^2
    long long P = odd ? 1 : 0, Q = 2;
    BigInt pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
    const BigInt bd = d;
    for (int k = 0; k < 10000000; ++k) {
        const long long a = floor_div(P + r, Q);
        const BigInt pk = a * pm1 + pm2;
        const BigInt qk = a * qm1 + qm2;
        // norm of pk - qk * omega
        BigInt nrm;
        if (odd)
            nrm = pk * pk - pk * qk + qk * qk * ((1 - bd) / 4);
        else
            nrm = pk * pk - (bd / 4) * qk * qk;
        if (nrm == 1 || nrm == -1) {
            FundamentalUnit u;
            u.x = odd ? BigInt(2 * pk - qk) : BigInt(2 * pk);
            u.y = qk;
            u.norm = static_cast<int>(nrm);
            using Float = boost::multiprecision::cpp_bin_float_50;
            const Float eps = (Float(u.x) + Float(u.y) * boost::multiprecision::sqrt(Float(d))) / 2;
            u.log_epsilon = static_cast<double>(boost::multiprecision::log(eps));
            return u;
        }
        pm2 = pm1;
        pm1 = pk;
        qm2 = qm1;
        qm1 = qk;
        P = a * Q - P;
        Q = (d - P * P) / Q;
    }
    throw ConvergenceError("fundamental_unit: continued fraction did not close", 0.0);
}

} // namespace toral
