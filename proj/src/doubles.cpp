#include "fusionkit/doubles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>

#include "fusionkit/errors.hpp"

namespace fusionkit {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) : table_(std::move(table))
{
    const int n = int(table_.size());
    if (n == 0)
        throw InputError("group table is empty");
    for (const auto& row : table_) {
        if (int(row.size()) != n)
            throw InputError("group table is not square");
        std::vector<bool> seen(n, false);
        for (int v : row) {
            if (v < 0 || v >= n)
                throw InputError("group table entry " + std::to_string(v) + " out of range");
            if (seen[v])
                throw InputError("group table is not a Latin square");
            seen[v] = true;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::vector<bool> seen(n, false);
        for (int r = 0; r < n; ++r) {
            if (seen[table_[r][c]])
                throw InputError("group table is not a Latin square");
            seen[table_[r][c]] = true;
        }
    }
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = table_[a][x] == x && table_[x][a] == x;
        if (ok)
            e = a;
    }
    if (e < 0)
        throw InputError("group table has no identity");
    if (e != 0) {
        auto sw = [e](int x) { return x == e ? 0 : x == 0 ? e : x; };
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                t[sw(a)][sw(b)] = sw(table_[a][b]);
        table_ = std::move(t);
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw InputError("group table is not associative at (" + std::to_string(a) +
                                     "," + std::to_string(b) + "," + std::to_string(c) + ")");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == 0)
                inverse_[a] = b;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators)
{
    std::size_t m = generators.empty() ? 1 : generators[0].size();
    for (const auto& g : generators) {
        if (g.size() != m)
            throw InputError("permutation generators have different lengths");
        std::vector<int> s = g;
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < m; ++i)
            if (s[i] != int(i))
                throw InputError("generator is not a permutation of 0.." + std::to_string(m - 1));
    }
    std::vector<int> id(m);
    for (std::size_t i = 0; i < m; ++i)
        id[i] = int(i);
    auto compose = [m](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> c(m);
        for (std::size_t i = 0; i < m; ++i)
            c[i] = a[b[i]];
        return c;
    };
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (const auto& g : generators) {
            auto y = compose(g, elems[head]);
            if (!index.count(y)) {
                if (elems.size() >= 4096)
                    throw CapacityError("permutation group has more than 4096 elements");
                index[y] = int(elems.size());
                elems.push_back(std::move(y));
            }
        }
    const std::size_t n = elems.size();
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            table[a][b] = index.at(compose(elems[a], elems[b]));
    return FiniteGroup(std::move(table));
}

int FiniteGroup::element_order(int a) const
{
    int o = 1;
    for (int x = a; x != 0; x = table_[x][a])
        ++o;
    return o;
}

int FiniteGroup::exponent() const
{
    int e = 1;
    for (std::size_t a = 0; a < order(); ++a)
        e = std::lcm(e, element_order(int(a)));
    return e;
}

FiniteGroup FiniteGroup::subgroup(const std::vector<int>& elements) const
{
    std::vector<int> pos(order(), -1);
    for (std::size_t i = 0; i < elements.size(); ++i)
        pos[elements[i]] = int(i);
    const std::size_t k = elements.size();
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            const int p = pos[table_[elements[a]][elements[b]]];
            if (p < 0)
                throw InputError("subgroup elements are not closed under multiplication");
            t[a][b] = p;
        }
    return FiniteGroup(std::move(t));
}

GroupAnalysis group_analysis(const FiniteGroup& g)
{
    const int n = int(g.order());
    GroupAnalysis out;
    out.class_of.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        if (out.class_of[x] >= 0)
            continue;
        const int id = int(out.classes.size());
        std::vector<int> cls;
        for (int h = 0; h < n; ++h) {
            const int y = g.mul(g.mul(h, x), g.inv(h));
            if (out.class_of[y] < 0) {
                out.class_of[y] = id;
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        out.classes.push_back(cls);
        out.representatives.push_back(x);
        std::vector<int> cent;
        for (int h = 0; h < n; ++h)
            if (g.mul(h, x) == g.mul(x, h))
                cent.push_back(h);
        out.centralizers.push_back(cent);
    }
    return out;
}

namespace {

using i64 = std::int64_t;
using ModMatrix = std::vector<std::vector<i64>>; // row-major, entries in [0, p)

i64 pmod(i64 a, i64 p) { return ((a % p) + p) % p; }

i64 power_mod(i64 b, i64 e, i64 p)
{
    i64 r = 1;
    b = pmod(b, p);
    while (e > 0) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

i64 inv_mod(i64 a, i64 p) { return power_mod(a, p - 2, p); }

bool is_prime(i64 x)
{
    if (x < 2)
        return false;
    for (i64 d = 2; d * d <= x; ++d)
        if (x % d == 0)
            return false;
    return true;
}

// Basis of the right null space of an r x m matrix over F_p, one vector per column.
ModMatrix null_space(ModMatrix a, std::size_t m, i64 p)
{
    const std::size_t r = a.size();
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < r; ++col) {
        std::size_t piv = row;
        while (piv < r && a[piv][col] == 0)
            ++piv;
        if (piv == r)
            continue;
        std::swap(a[piv], a[row]);
        const i64 s = inv_mod(a[row][col], p);
        for (auto& v : a[row])
            v = v * s % p;
        for (std::size_t i = 0; i < r; ++i)
            if (i != row && a[i][col] != 0) {
                const i64 f = a[i][col];
                for (std::size_t j = 0; j < m; ++j)
                    a[i][j] = pmod(a[i][j] - f * a[row][j], p);
            }
        pivot_col.push_back(int(col));
        ++row;
    }
    std::vector<bool> is_pivot(m, false);
    for (int c : pivot_col)
        is_pivot[c] = true;
    ModMatrix basis;
    for (std::size_t free = 0; free < m; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<i64> v(m, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = pmod(-a[i][free], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Subspace of F_p^r given by basis vectors (each of length r).
using Subspace = std::vector<std::vector<i64>>;

std::vector<Subspace> split(const Subspace& w, const ModMatrix& a, i64 p)
{
    const std::size_t r = a.size(), m = w.size();
    // image columns (A - lambda) w_c = A w_c - lambda w_c
    ModMatrix aw(r, std::vector<i64>(m, 0));
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t i = 0; i < r; ++i) {
            i64 s = 0;
            for (std::size_t k = 0; k < r; ++k)
                s += a[i][k] * w[c][k] % p;
            aw[i][c] = s % p;
        }
    std::vector<Subspace> out;
    std::size_t found = 0;
    for (i64 lambda = 0; lambda < p && found < m; ++lambda) {
        ModMatrix shifted = aw;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t c = 0; c < m; ++c)
                shifted[i][c] = pmod(shifted[i][c] - lambda * w[c][i], p);
        const ModMatrix ker = null_space(shifted, m, p);
        if (ker.empty())
            continue;
        Subspace sub;
        for (const auto& coeffs : ker) {
            std::vector<i64> v(r, 0);
            for (std::size_t c = 0; c < m; ++c)
                if (coeffs[c])
                    for (std::size_t i = 0; i < r; ++i)
                        v[i] = (v[i] + coeffs[c] * w[c][i]) % p;
            sub.push_back(std::move(v));
        }
        found += sub.size();
        out.push_back(std::move(sub));
    }
    if (found != m)
        throw NumericalError("class matrix is not diagonalizable over F_" + std::to_string(p));
    return out;
}

using Cplx = std::complex<double>;

int compare_values(const std::vector<Cplx>& a, const std::vector<Cplx>& b)
{
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a[k].real() - b[k].real()) > 1e-9)
            return a[k].real() > b[k].real() ? -1 : 1;
        if (std::abs(a[k].imag() - b[k].imag()) > 1e-9)
            return a[k].imag() > b[k].imag() ? -1 : 1;
    }
    return 0;
}

} // namespace

CharacterTable character_table(const FiniteGroup& h, std::size_t order_cap)
{
    const int n = int(h.order());
    if (h.order() > order_cap)
        throw CapacityError("character_table: group order " + std::to_string(n) +
                            " exceeds cap " + std::to_string(order_cap));
    CharacterTable ct;
    ct.analysis = group_analysis(h);
    const GroupAnalysis& ga = ct.analysis;
    const int r = int(ga.classes.size());
    const int e = h.exponent();

    i64 p = e + 1;
    while (!is_prime(p) || double(p) <= 2.0 * std::sqrt(double(n)))
        p += e;
    ct.splitting_prime = int(p);

    // c[i][j][k] = #{x in C_i : x^-1 z_k in C_j}
    std::vector<ModMatrix> M(r, ModMatrix(r, std::vector<i64>(r, 0)));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            const int z = ga.representatives[k];
            for (int x : ga.classes[i])
                ++M[i][ga.class_of[h.mul(h.inv(x), z)]][k];
        }

    Subspace full(r, std::vector<i64>(r, 0));
    for (int i = 0; i < r; ++i)
        full[i][i] = 1;
    std::vector<Subspace> spaces{full};
    if (r > 1) {
        ModMatrix comb(r, std::vector<i64>(r, 0));
        i64 coeff = 1;
        for (int i = 0; i < r; ++i) {
            coeff = (coeff * 7 + 3) % p;
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k)
                    comb[j][k] = (comb[j][k] + coeff * M[i][j][k]) % p;
        }
        spaces = split(full, comb, p);
        for (int i = 0; i < r; ++i) {
            std::vector<Subspace> next;
            for (const auto& s : spaces) {
                if (s.size() == 1) {
                    next.push_back(s);
                    continue;
                }
                for (auto& piece : split(s, M[i], p))
                    next.push_back(std::move(piece));
            }
            spaces = std::move(next);
        }
    }
    if (int(spaces.size()) != r)
        throw NumericalError("class matrices do not split into one-dimensional eigenspaces");

    std::vector<int> inverse_class(r);
    for (int k = 0; k < r; ++k)
        inverse_class[k] = ga.class_of[h.inv(ga.representatives[k])];

    std::vector<i64> factors;
    for (i64 f = 2, rest = p - 1; rest > 1; ++f)
        if (rest % f == 0) {
            factors.push_back(f);
            while (rest % f == 0)
                rest /= f;
        }
    i64 gen = 1;
    for (bool primitive = false; !primitive;) {
        ++gen;
        primitive = std::all_of(factors.begin(), factors.end(),
                                [&](i64 f) { return power_mod(gen, (p - 1) / f, p) != 1; });
    }
    const i64 z = power_mod(gen, (p - 1) / e, p);

    for (const auto& s : spaces) {
        std::vector<i64> w = s[0];
        if (w[0] == 0)
            throw NumericalError("eigenvector vanishes on the identity class");
        const i64 scale = inv_mod(w[0], p);
        for (auto& v : w)
            v = v * scale % p;
        i64 sum = 0;
        for (int k = 0; k < r; ++k)
            sum = (sum + w[k] * w[inverse_class[k]] % p * inv_mod(i64(ga.classes[k].size()), p)) % p;
        if (sum == 0)
            throw NumericalError("degenerate eigenvector norm");
        const i64 deg_sq = i64(n) % p * inv_mod(sum, p) % p;
        i64 deg = 0;
        for (i64 d = 1; d * d <= n; ++d)
            if (d * d % p == deg_sq)
                deg = d;
        if (deg == 0)
            throw NumericalError("no character degree squares to the computed value mod " +
                                 std::to_string(p));
        std::vector<i64> chi_p(r);
        for (int k = 0; k < r; ++k)
            chi_p[k] = w[k] * deg % p * inv_mod(i64(ga.classes[k].size()), p) % p;

        std::vector<Cplx> row(r);
        for (int k = 0; k < r; ++k) {
            const int g = ga.representatives[k];
            const int o = h.element_order(g);
            std::vector<int> power_class(o);
            for (int l = 0, x = 0; l < o; ++l, x = h.mul(x, g))
                power_class[l] = ga.class_of[x];
            const i64 zo = power_mod(z, e / o, p);
            const i64 zo_inv = inv_mod(zo, p);
            i64 total = 0;
            Cplx value = 0;
            for (int j = 0; j < o; ++j) {
                i64 mj = 0;
                for (int l = 0; l < o; ++l)
                    mj = (mj + chi_p[power_class[l]] * power_mod(zo_inv, i64(j) * l, p)) % p;
                mj = mj * inv_mod(o, p) % p;
                if (mj > deg)
                    throw NumericalError("eigenvalue multiplicity does not lift");
                total += mj;
                value += double(mj) * std::polar(1.0, 2.0 * std::numbers::pi * j / o);
            }
            if (total != deg)
                throw NumericalError("eigenvalue multiplicities do not sum to the degree");
            row[k] = value;
        }
        ct.chars.push_back(std::move(row));
    }

    std::sort(ct.chars.begin(), ct.chars.end(), [](const auto& a, const auto& b) {
        const double da = a[0].real(), db = b[0].real();
        if (std::abs(da - db) > 0.5)
            return da < db;
        return compare_values(a, b) < 0;
    });

    for (int x = 0; x < r; ++x)
        for (int y = 0; y < r; ++y) {
            Cplx s = 0;
            for (int k = 0; k < r; ++k)
                s += double(ga.classes[k].size()) * ct.chars[x][k] * std::conj(ct.chars[y][k]);
            if (std::abs(s - Cplx(x == y ? n : 0)) > 1e-9 * n)
                throw NumericalError("character orthogonality fails for rows " +
                                     std::to_string(x) + ", " + std::to_string(y));
        }
    return ct;
}

DoubleData double_modular_data(const FiniteGroup& g, std::size_t order_cap)
{
    const int n = int(g.order());
    if (g.order() > order_cap)
        throw CapacityError("double_modular_data: group order " + std::to_string(n) +
                            " exceeds cap " + std::to_string(order_cap));
    const GroupAnalysis ga = group_analysis(g);
    const int classes = int(ga.classes.size());

    std::vector<CharacterTable> tables;
    std::vector<std::vector<int>> position(classes, std::vector<int>(n, -1));
    for (int c = 0; c < classes; ++c) {
        const auto& cent = ga.centralizers[c];
        for (std::size_t i = 0; i < cent.size(); ++i)
            position[c][cent[i]] = int(i);
        tables.push_back(character_table(g.subgroup(cent)));
    }
    // value of character x of C(rep_c) on group element y (y must lie in C(rep_c))
    auto chi = [&](int c, int x, int y) {
        const CharacterTable& t = tables[c];
        return t.chars[x][t.analysis.class_of[position[c][y]]];
    };

    DoubleData out;
    for (int c = 0; c < classes; ++c)
        for (std::size_t x = 0; x < tables[c].chars.size(); ++x) {
            DoubleLabel l;
            l.conjugacy_class = c;
            l.representative = ga.representatives[c];
            l.character = int(x);
            l.dimension = int(ga.classes[c].size()) * tables[c].degree(x);
            out.labels.push_back(l);
        }
    std::stable_sort(out.labels.begin(), out.labels.end(), [](const DoubleLabel& a, const DoubleLabel& b) {
        return std::tie(a.dimension, a.conjugacy_class, a.character) <
               std::tie(b.dimension, b.conjugacy_class, b.character);
    });
    const std::size_t rank = out.labels.size();
    if (rank > kMaxDenseRank)
        throw CapacityError("double has rank " + std::to_string(rank) + " above the dense cap");

    ModularData& md = out.md;
    md.tolerance = 1e-8;
    md.S.resize(rank, rank);
    md.T.resize(rank);
    for (std::size_t u = 0; u < rank; ++u) {
        const DoubleLabel& A = out.labels[u];
        const int a = A.representative;
        md.T[u] = chi(A.conjugacy_class, A.character, a) / double(tables[A.conjugacy_class].degree(A.character));
        md.labels.push_back("(" + std::to_string(a) + "," + std::to_string(A.character) + ")");
        for (std::size_t v = 0; v < rank; ++v) {
            const DoubleLabel& B = out.labels[v];
            const int b = B.representative;
            Complex s = 0;
            for (int h = 0; h < n; ++h) {
                const int hbh = g.mul(g.mul(h, b), g.inv(h));
                if (g.mul(a, hbh) != g.mul(hbh, a))
                    continue;
                const int hah = g.mul(g.mul(g.inv(h), a), h);
                s += std::conj(chi(A.conjugacy_class, A.character, hbh)) *
                     std::conj(chi(B.conjugacy_class, B.character, hah));
            }
            const double ca = double(ga.centralizers[A.conjugacy_class].size());
            const double cb = double(ga.centralizers[B.conjugacy_class].size());
            md.S(u, v) = s * double(n) / (ca * cb);
        }
    }
    md.labels[0] = "1";
    out.ring = verlinde_fusion(md);
    return out;
}

} // namespace fusionkit
