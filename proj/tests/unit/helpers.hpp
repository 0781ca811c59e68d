#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fusionkit/classifier.hpp"
#include "fusionkit/fusion_ring.hpp"
#include "fusionkit/io.hpp"
#include "fusionkit/modular_data.hpp"

namespace testing_helpers {

inline std::string fixture(const std::string& rel)
{
    return std::string(FIXTURES_DIR) + "/" + rel;
}

inline fusionkit::FusionRing ring_fixture(const std::string& name)
{
    return fusionkit::load_ring(fixture("rings/" + name + ".json"));
}

/// Group ring of a group given by its multiplication table (identity at 0).
inline fusionkit::FusionRing group_ring(const std::vector<std::vector<int>>& table)
{
    const int n = int(table.size());
    std::vector<std::string> labels(n);
    std::vector<int> dual(n);
    std::vector<std::array<int, 4>> triples;
    for (int a = 0; a < n; ++a) {
        labels[a] = a == 0 ? "1" : "e" + std::to_string(a);
        for (int b = 0; b < n; ++b) {
            triples.push_back({a, b, table[a][b], 1});
            if (table[a][b] == 0)
                dual[a] = b;
        }
    }
    return fusionkit::FusionRing::from_triples(labels, dual, triples);
}

inline std::vector<std::vector<int>> cyclic_product_table(const std::vector<int>& orders)
{
    int n = 1;
    for (int o : orders)
        n *= o;
    auto digits = [&](int x) {
        std::vector<int> d;
        for (int o : orders) {
            d.push_back(x % o);
            x /= o;
        }
        return d;
    };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto da = digits(a), db = digits(b);
            int x = 0, scale = 1;
            for (std::size_t i = 0; i < orders.size(); ++i) {
                x += ((da[i] + db[i]) % orders[i]) * scale;
                scale *= orders[i];
            }
            t[a][b] = x;
        }
    return t;
}

/// Uniform random permutation of 0..n-1 fixing 0.
inline std::vector<int> random_relabeling(std::size_t n, std::mt19937& rng)
{
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    if (n > 1)
        std::shuffle(p.begin() + 1, p.end(), rng);
    return p;
}

} // namespace testing_helpers

namespace testing_helpers {

/// Mixed-radix element index for A = Z_{orders[0]} x Z_{orders[1]} x ...
inline std::vector<int> digits_of(int x, const std::vector<int>& orders)
{
    std::vector<int> d;
    for (int o : orders) {
        d.push_back(x % o);
        x /= o;
    }
    return d;
}

inline int gcd_int(int a, int b) { return b == 0 ? a : gcd_int(b, a % b); }

/// q(x) = exp(2 pi i Q(x)) with Q(x) = sum c_i x_i^2 / m_i + sum_{i<j} c_ij x_i x_j / gcd(n_i, n_j),
/// m_i = 2 n_i for even n_i and n_i otherwise. Always a well-defined quadratic form.
inline fusionkit::MetricGroup quadratic_form(const std::vector<int>& orders,
                                             const std::vector<int>& diag,
                                             const std::vector<int>& cross)
{
    fusionkit::MetricGroup mg;
    mg.table = cyclic_product_table(orders);
    const int n = int(mg.table.size());
    const std::size_t r = orders.size();
    for (int x = 0; x < n; ++x) {
        const auto d = digits_of(x, orders);
        double Q = 0.0;
        std::size_t t = 0;
        for (std::size_t i = 0; i < r; ++i) {
            const int m = orders[i] % 2 == 0 ? 2 * orders[i] : orders[i];
            Q += double(diag[i]) * d[i] * d[i] / m;
            for (std::size_t j = i + 1; j < r; ++j, ++t)
                Q += double(cross[t]) * d[i] * d[j] / gcd_int(orders[i], orders[j]);
        }
        Q -= std::floor(Q);
        mg.q.push_back(std::polar(1.0, 2.0 * M_PI * Q));
    }
    return mg;
}

/// Every finite abelian group of order <= max_order as a list of cyclic factor orders.
inline std::vector<std::vector<int>> abelian_groups_up_to(int max_order)
{
    // groups as products of cyclic groups Z_{k_1} x ... with k_1 | k_2 | ...
    std::vector<std::vector<int>> out{{1}};
    std::function<void(std::vector<int>, int)> rec = [&](std::vector<int> fs, int prod) {
        const int last = fs.empty() ? 1 : fs.back();
        for (int k = std::max(2, last); prod * k <= max_order; k += 1) {
            if (!fs.empty() && k % last != 0)
                continue;
            auto next = fs;
            next.push_back(k);
            out.push_back(next);
            rec(next, prod * k);
        }
    };
    rec({}, 1);
    return out;
}

} // namespace testing_helpers

namespace testing_helpers {

// Number of solutions by coin-change counting; independent of the enumerator.
inline long long count_solutions(long long n)
{
    std::vector<long long> sq;
    for (long long d = 2; d * d < n; ++d)
        if (n % (d * d) == 0)
            sq.push_back(d * d);
    std::vector<long long> ways(n + 1, 0);
    ways[0] = 1;
    for (long long s : sq)
        for (long long t = s; t <= n; ++t)
            ways[t] += ways[t - s];
    long long total = 0;
    for (long long a = 1; a <= n; ++a)
        if (n % a == 0)
            total += ways[n - a];
    return total;
}

// Odometer over every multiplicity tuple within the trivial bounds.
inline std::set<fusionkit::TypeSignature> odometer(long long n)
{
    std::vector<long long> dims;
    for (long long d = 1; d * d <= n; ++d)
        if (n % (d * d) == 0 && (d == 1 || d * d < n))
            dims.push_back(d);
    std::vector<long long> m(dims.size(), 0);
    std::set<fusionkit::TypeSignature> out;
    while (true) {
        long long total = 0;
        for (std::size_t i = 0; i < dims.size(); ++i)
            total += m[i] * dims[i] * dims[i];
        if (total == n && m[0] >= 1 && n % m[0] == 0) {
            fusionkit::TypeSignature s;
            for (std::size_t i = 0; i < dims.size(); ++i)
                if (m[i])
                    s.entries.emplace_back(dims[i], m[i]);
            out.insert(s);
        }
        std::size_t i = 0;
        while (i < dims.size() && ++m[i] > n / (dims[i] * dims[i]))
            m[i++] = 0;
        if (i == dims.size())
            break;
    }
    return out;
}

} // namespace testing_helpers
