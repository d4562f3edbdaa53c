#include "hhtwist/poly.hpp"

namespace hht::poly {

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int euler_phi(int r) {
    int result = r, n = r;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        while (n % d == 0) n /= d;
        result -= result / d;
    }
    if (n > 1) result -= result / n;
    return result;
}

std::vector<mpz_class> cyclotomic(int r) {
    if (r < 1) throw std::invalid_argument("cyclotomic order must be positive");
    QOps ops;
    Poly<QOps> num(r + 1, 0);
    num[0] = -1;
    num[r] = 1;
    for (auto d : divisors(r)) {
        if (d == r) continue;
        auto phi_d = cyclotomic(static_cast<int>(d));
        Poly<QOps> f(phi_d.begin(), phi_d.end());
        num = divmod(ops, num, f).first;
    }
    std::vector<mpz_class> out;
    for (auto& c : num) out.push_back(c.get_num());
    return out;
}

}  // namespace hht::poly
