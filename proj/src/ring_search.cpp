#include "fusionkit/ring_search.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

using Cell = std::array<int, 3>;

std::string cell_name(const std::vector<std::string>& labels, int i, int j, int k)
{
    return "N[" + labels[i] + "][" + labels[j] + "][" + labels[k] + "]";
}

bool is_permutation_of(const std::vector<int>& p, std::size_t n)
{
    if (p.size() != n)
        return false;
    std::vector<char> seen(n, 0);
    for (int x : p) {
        if (x < 0 || std::size_t(x) >= n || seen[x])
            return false;
        seen[x] = 1;
    }
    return true;
}

struct GradingLaw {
    std::vector<int> grade;
    std::vector<std::vector<int>> table;

    bool active() const { return !grade.empty(); }
    int inverse(int a) const
    {
        for (std::size_t b = 0; b < table.size(); ++b)
            if (table[a][b] == grade[0])
                return int(b);
        return -1;
    }
};

GradingLaw grading_law(const SearchSpec& spec)
{
    GradingLaw g;
    if (spec.grading.empty())
        return g;
    g.grade = spec.grading;
    const int order = *std::max_element(g.grade.begin(), g.grade.end()) + 1;
    if (!spec.grading_table.empty()) {
        g.table = spec.grading_table;
    } else {
        g.table.assign(order, std::vector<int>(order));
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                g.table[a][b] = (a + b) % order;
    }
    return g;
}

struct Domains {
    std::vector<int> lo, hi;
};

// Orbit structure and linear data for one fully specified dual.
struct Model {
    int n = 0;
    std::vector<std::string> labels;
    std::vector<long long> d;
    std::vector<int> dual;
    std::vector<int> orbit_of;
    std::vector<std::vector<int>> cells;
    std::vector<char> given; ///< cell appears in spec.fixed or is excluded by the free list

    struct Term {
        int orbit;
        long long coef;
    };
    struct Row {
        int i, j;
        long long rhs;
        std::vector<Term> terms;
    };
    std::vector<Row> rows;

    int idx(int i, int j, int k) const { return (i * n + j) * n + k; }
    Cell cell(int c) const { return {c / (n * n), (c / n) % n, c % n}; }
    std::string name(int c) const
    {
        const Cell x = cell(c);
        return cell_name(labels, x[0], x[1], x[2]);
    }
};

int find_root(std::vector<int>& parent, int x)
{
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

class Contradiction : public std::exception {
public:
    explicit Contradiction(std::string m) : msg_(std::move(m)) {}
    const char* what() const noexcept override { return msg_.c_str(); }

private:
    std::string msg_;
};

void restrict_cell(const Model& m, Domains& dom, int c, int lo, int hi, const char* why)
{
    const int o = m.orbit_of[c];
    const int nlo = std::max(dom.lo[o], lo), nhi = std::min(dom.hi[o], hi);
    if (nlo > nhi) {
        std::ostringstream os;
        os << m.name(c) << ": " << why << " requires [" << lo << "," << hi
           << "] but its orbit already allows only [" << dom.lo[o] << "," << dom.hi[o] << "]";
        throw Contradiction(os.str());
    }
    dom.lo[o] = nlo;
    dom.hi[o] = nhi;
}

Model build_model(const SearchSpec& spec, const std::vector<int>& dual, bool use_action,
                  Domains& dom)
{
    Model m;
    m.n = int(spec.rank());
    m.labels = spec.labels;
    m.d = spec.dims;
    m.dual = dual;
    const int n = m.n, total = n * n * n;

    std::vector<int> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto unite = [&](int a, int b) { parent[find_root(parent, a)] = find_root(parent, b); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const int c = m.idx(i, j, k);
                unite(c, m.idx(dual[i], k, j));
                unite(c, m.idx(k, dual[j], i));
                unite(c, m.idx(dual[j], dual[i], dual[k]));
                if (spec.commutative)
                    unite(c, m.idx(j, i, k));
                if (use_action)
                    for (const auto& act : spec.pointed_action)
                        unite(c, m.idx(act.permutation[i], j, act.permutation[k]));
            }

    m.orbit_of.assign(total, -1);
    std::vector<int> id_of_root(total, -1);
    for (int c = 0; c < total; ++c) {
        const int r = find_root(parent, c);
        if (id_of_root[r] < 0) {
            id_of_root[r] = int(m.cells.size());
            m.cells.emplace_back();
        }
        m.orbit_of[c] = id_of_root[r];
        m.cells[id_of_root[r]].push_back(c);
    }

    const std::size_t orbits = m.cells.size();
    dom.lo.assign(orbits, 0);
    dom.hi.assign(orbits, INT_MAX);
    m.given.assign(total, 0);

    const GradingLaw grading = grading_law(spec);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const int c = m.idx(i, j, k);
                const long long cap = m.d[i] * m.d[j] / m.d[k];
                restrict_cell(m, dom, c, 0, int(std::min<long long>(cap, INT_MAX)),
                              "dimension bound floor(d_i d_j / d_k)");
                if (spec.global_bound)
                    restrict_cell(m, dom, c, 0, *spec.global_bound, "global bound");
                if (i == 0)
                    restrict_cell(m, dom, c, j == k, j == k, "unit axiom");
                if (j == 0)
                    restrict_cell(m, dom, c, i == k, i == k, "unit axiom");
                if (k == 0)
                    restrict_cell(m, dom, c, j == dual[i], j == dual[i], "duality");
                if (grading.active() &&
                    grading.grade[k] != grading.table[grading.grade[i]][grading.grade[j]])
                    restrict_cell(m, dom, c, 0, 0, "grading");
            }
    if (use_action)
        for (const auto& act : spec.pointed_action)
            for (int a = 0; a < n; ++a)
                for (int c = 0; c < n; ++c) {
                    const int v = act.permutation[a] == c;
                    restrict_cell(m, dom, m.idx(act.generator, a, c), v, v, "pointed action");
                }
    for (const auto& b : spec.bounds)
        restrict_cell(m, dom, m.idx(b[0], b[1], b[2]), 0, b[3], "declared bound");
    for (const auto& f : spec.fixed) {
        const int c = m.idx(f[0], f[1], f[2]);
        restrict_cell(m, dom, c, f[3], f[3], "fixed entry");
        m.given[c] = 1;
    }
    if (spec.free) {
        std::vector<char> has_free(orbits, 0);
        for (const auto& f : *spec.free)
            has_free[m.orbit_of[m.idx(f[0], f[1], f[2])]] = 1;
        for (std::size_t o = 0; o < orbits; ++o)
            if (!has_free[o]) {
                dom.hi[o] = dom.lo[o];
                for (int c : m.cells[o])
                    m.given[c] = 1;
            }
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Model::Row row{i, j, m.d[i] * m.d[j], {}};
            std::map<int, long long> coef;
            for (int k = 0; k < n; ++k)
                coef[m.orbit_of[m.idx(i, j, k)]] += m.d[k];
            for (const auto& [o, cf] : coef)
                row.terms.push_back({o, cf});
            m.rows.push_back(std::move(row));
        }
    return m;
}

long long floor_div(long long a, long long b)
{
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

long long ceil_div(long long a, long long b)
{
    return -floor_div(-a, b);
}

bool tighten(Domains& dom, int o, long long lo, long long hi)
{
    bool changed = false;
    if (lo > dom.lo[o]) {
        dom.lo[o] = int(std::min<long long>(lo, INT_MAX));
        changed = true;
    }
    if (hi < dom.hi[o]) {
        dom.hi[o] = int(std::max<long long>(hi, -1));
        changed = true;
    }
    return changed;
}

// Bound propagation to a fixpoint: the dimension equations, then interval
// reasoning on associativity. Throws Contradiction.
void propagate(const Model& m, Domains& dom)
{
    const int n = m.n;
    auto check = [&](int o, const std::string& what) {
        if (dom.lo[o] > dom.hi[o])
            throw Contradiction(what + " leaves no value for " + m.name(m.cells[o][0]));
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& row : m.rows) {
            long long mn = 0, mx = 0;
            for (const auto& t : row.terms) {
                mn += t.coef * dom.lo[t.orbit];
                mx += t.coef * dom.hi[t.orbit];
            }
            if (mn > row.rhs || mx < row.rhs) {
                std::ostringstream os;
                os << "dimension equation d(" << m.labels[row.i] << ")d(" << m.labels[row.j]
                   << ") = " << row.rhs << " = sum_k N d_k: the fixed entries give "
                   << (mn > row.rhs ? "at least " : "at most ") << (mn > row.rhs ? mn : mx);
                throw Contradiction(os.str());
            }
            for (const auto& t : row.terms) {
                const int o = t.orbit;
                const long long rest_min = mn - t.coef * dom.lo[o];
                const long long rest_max = mx - t.coef * dom.hi[o];
                if (tighten(dom, o, ceil_div(row.rhs - rest_max, t.coef),
                            floor_div(row.rhs - rest_min, t.coef))) {
                    changed = true;
                    check(o, "dimension equation for " + m.labels[row.i] + " x " + m.labels[row.j]);
                    mn = rest_min + t.coef * dom.lo[o];
                    mx = rest_max + t.coef * dom.hi[o];
                }
            }
        }
        if (changed)
            continue;

        // (i j) k = i (j k) at coefficient l
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                for (int k = 1; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        struct Prod {
                            int a, b;
                        };
                        Prod left[64], right[64];
                        long long lmin = 0, lmax = 0, rmin = 0, rmax = 0;
                        for (int x = 0; x < n; ++x) {
                            left[x] = {m.orbit_of[m.idx(i, j, x)], m.orbit_of[m.idx(x, k, l)]};
                            right[x] = {m.orbit_of[m.idx(j, k, x)], m.orbit_of[m.idx(i, x, l)]};
                            lmin += 1LL * dom.lo[left[x].a] * dom.lo[left[x].b];
                            lmax += 1LL * dom.hi[left[x].a] * dom.hi[left[x].b];
                            rmin += 1LL * dom.lo[right[x].a] * dom.lo[right[x].b];
                            rmax += 1LL * dom.hi[right[x].a] * dom.hi[right[x].b];
                        }
                        if (lmin > rmax || rmin > lmax) {
                            std::ostringstream os;
                            os << "associativity (" << m.labels[i] << " " << m.labels[j] << ") "
                               << m.labels[k] << " = " << m.labels[i] << " (" << m.labels[j] << " "
                               << m.labels[k] << ") at " << m.labels[l] << ": left in [" << lmin
                               << "," << lmax << "], right in [" << rmin << "," << rmax << "]";
                            throw Contradiction(os.str());
                        }
                        // a side with one known factor per term bounds the other factor
                        auto side = [&](Prod* terms, long long smin, long long smax, long long omin,
                                        long long omax) {
                            for (int x = 0; x < n; ++x) {
                                int f = terms[x].a, v = terms[x].b;
                                if (dom.lo[f] != dom.hi[f])
                                    std::swap(f, v);
                                if (dom.lo[f] != dom.hi[f] || dom.lo[f] == 0 || f == v)
                                    continue;
                                const long long fv = dom.lo[f];
                                const long long rest_min = smin - fv * dom.lo[v];
                                const long long rest_max = smax - fv * dom.hi[v];
                                if (tighten(dom, v, ceil_div(omin - rest_max, fv),
                                            floor_div(omax - rest_min, fv))) {
                                    changed = true;
                                    check(v, "associativity");
                                    return;
                                }
                            }
                        };
                        side(left, lmin, lmax, rmin, rmax);
                        if (!changed)
                            side(right, rmin, rmax, lmin, lmax);
                    }
    }
}

int choose_orbit(const Domains& dom)
{
    int best = -1;
    for (std::size_t o = 0; o < dom.lo.size(); ++o) {
        if (dom.lo[o] == dom.hi[o])
            continue;
        if (best < 0 || dom.hi[o] - dom.lo[o] < dom.hi[best] - dom.lo[best])
            best = int(o);
    }
    return best;
}

FusionRing realize(const Model& m, const Domains& dom)
{
    std::vector<int> tensor(m.orbit_of.size());
    for (std::size_t c = 0; c < tensor.size(); ++c)
        tensor[c] = dom.lo[m.orbit_of[c]];
    return FusionRing(m.labels, m.dual, std::move(tensor));
}

struct Shared {
    std::uint64_t cap;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> aborted{false};
};

struct TaskOut {
    std::vector<FusionRing> rings;
    SearchStats stats;
};

void dfs(const Model& m, Domains dom, Shared& shared, TaskOut& out)
{
    if (shared.aborted.load(std::memory_order_relaxed))
        return;
    if (shared.nodes.fetch_add(1, std::memory_order_relaxed) + 1 > shared.cap) {
        shared.aborted = true;
        return;
    }
    ++out.stats.nodes;
    try {
        propagate(m, dom);
    } catch (const Contradiction&) {
        ++out.stats.contradictions;
        return;
    }
    const int o = choose_orbit(dom);
    if (o < 0) {
        ++out.stats.leaves;
        FusionRing ring = realize(m, dom);
        if (validate_fusion_ring(ring).valid())
            out.rings.push_back(std::move(ring));
        else
            ++out.stats.rejected_leaves;
        return;
    }
    for (int v = dom.lo[o]; v <= dom.hi[o]; ++v) {
        Domains next = dom;
        next.lo[o] = next.hi[o] = v;
        dfs(m, std::move(next), shared, out);
    }
}

void add_stats(SearchStats& into, const SearchStats& s)
{
    into.nodes += s.nodes;
    into.leaves += s.leaves;
    into.contradictions += s.contradictions;
    into.rejected_leaves += s.rejected_leaves;
}

// Search below an already propagated root, splitting its first branch point
// across workers.
std::vector<FusionRing> search_root(const Model& m, const Domains& root, Shared& shared,
                                    unsigned workers, SearchStats& stats)
{
    const int o = choose_orbit(root);
    std::vector<Domains> tasks;
    if (o < 0) {
        tasks.push_back(root);
    } else {
        for (int v = root.lo[o]; v <= root.hi[o]; ++v) {
            Domains next = root;
            next.lo[o] = next.hi[o] = v;
            tasks.push_back(std::move(next));
        }
    }
    std::vector<TaskOut> outs(tasks.size());
    std::atomic<std::size_t> next_task{0};
    auto work = [&] {
        for (std::size_t t; (t = next_task.fetch_add(1)) < tasks.size();)
            dfs(m, tasks[t], shared, outs[t]);
    };
    const unsigned w = std::max(1u, std::min<unsigned>(workers, unsigned(tasks.size())));
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < w; ++t)
        threads.emplace_back(work);
    work();
    for (auto& t : threads)
        t.join();

    std::vector<FusionRing> rings;
    for (auto& out : outs) {
        add_stats(stats, out.stats);
        for (auto& r : out.rings)
            rings.push_back(std::move(r));
    }
    return rings;
}

void enumerate_duals(const SearchSpec& spec, const GradingLaw& grading, std::vector<int>& dual,
                     std::size_t pos, std::vector<std::vector<int>>& out)
{
    const std::size_t n = spec.rank();
    while (pos < n && dual[pos] >= 0)
        ++pos;
    if (pos == n) {
        out.push_back(dual);
        return;
    }
    for (std::size_t j = pos; j < n; ++j) {
        if (dual[j] >= 0 || spec.dims[j] != spec.dims[pos])
            continue;
        if (grading.active() && grading.grade[j] != grading.inverse(grading.grade[pos]))
            continue;
        dual[pos] = int(j);
        dual[j] = int(pos);
        enumerate_duals(spec, grading, dual, pos + 1, out);
        dual[pos] = dual[j] = -1;
    }
}

std::vector<std::vector<int>> group_closure(const std::vector<std::vector<int>>& gens, std::size_t n)
{
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> order{id};
    for (std::size_t at = 0; at < order.size(); ++at)
        for (const auto& g : gens) {
            std::vector<int> h(n);
            for (std::size_t x = 0; x < n; ++x)
                h[x] = g[order[at][x]];
            if (seen.insert(h).second) {
                order.push_back(h);
                if (order.size() > 100000)
                    throw CapacityError("relabel group exceeds 100000 elements");
            }
        }
    return order;
}

bool ring_less(const FusionRing& a, const FusionRing& b)
{
    if (a.duals() != b.duals())
        return a.duals() < b.duals();
    return a.tensor() < b.tensor();
}

} // namespace

void validate_spec(const SearchSpec& spec)
{
    const std::size_t n = spec.rank();
    if (n == 0)
        throw InputError("search spec has no labels");
    if (n > kMaxDenseRank)
        throw CapacityError("search spec rank " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxDenseRank));
    if (spec.dims.size() != n)
        throw InputError("search spec: dims has " + std::to_string(spec.dims.size()) +
                         " entries, expected " + std::to_string(n));
    if (spec.dual.size() != n)
        throw InputError("search spec: dual has wrong length");
    for (long long d : spec.dims)
        if (d < 1)
            throw InputError("search spec: dimensions must be positive integers");
    if (spec.dims[0] != 1)
        throw InputError("search spec: the unit must have dimension 1");
    for (std::size_t i = 0; i < n; ++i) {
        const int j = spec.dual[i];
        if (j < -1 || j >= int(n))
            throw InputError("search spec: dual entry out of range for " + spec.labels[i]);
        if (j >= 0 && spec.dual[j] >= 0 && spec.dual[j] != int(i))
            throw InputError("search spec: dual is not an involution at " + spec.labels[i]);
        if (j >= 0 && spec.dims[j] != spec.dims[i])
            throw InputError("search spec: " + spec.labels[i] + " and its dual have different dimensions");
    }
    if (spec.dual[0] > 0)
        throw InputError("search spec: the unit must be self-dual");

    if (!spec.grading.empty()) {
        if (spec.grading.size() != n)
            throw InputError("search spec: grading assignment has wrong length");
        for (int g : spec.grading)
            if (g < 0)
                throw InputError("search spec: negative grading component");
        const int order = *std::max_element(spec.grading.begin(), spec.grading.end()) + 1;
        if (!spec.grading_table.empty()) {
            if (spec.grading_table.size() != std::size_t(order))
                throw InputError("search spec: grading table size does not match component count");
            for (const auto& row : spec.grading_table)
                if (!is_permutation_of(row, order))
                    throw InputError("search spec: grading table is not a Latin square");
        }
        const GradingLaw g = grading_law(spec);
        for (std::size_t i = 0; i < n; ++i)
            if (spec.dual[i] >= 0 && g.grade[spec.dual[i]] != g.inverse(g.grade[i]))
                throw InputError("search spec: dual of " + spec.labels[i] +
                                 " lies in the wrong grading component");
    }

    for (const auto& act : spec.pointed_action) {
        if (act.generator <= 0 || std::size_t(act.generator) >= n)
            throw InputError("pointed_action: generator index out of range");
        if (spec.dims[act.generator] != 1)
            throw InputError("pointed_action: generator " + spec.labels[act.generator] +
                             " is not of dimension 1");
        if (!is_permutation_of(act.permutation, n))
            throw InputError("pointed_action: permutation for " + spec.labels[act.generator] +
                             " is not a permutation of the basis");
        if (act.permutation[0] != act.generator)
            throw InputError("pointed_action: " + spec.labels[act.generator] +
                             " * 1 must be the generator itself");
        for (std::size_t a = 0; a < n; ++a)
            if (spec.dims[act.permutation[a]] != spec.dims[a])
                throw InputError("pointed_action: " + spec.labels[act.generator] +
                                 " does not preserve dimensions");
    }

    auto check_cell = [&](int i, int j, int k, const char* what) {
        if (i < 0 || j < 0 || k < 0 || std::size_t(std::max({i, j, k})) >= n)
            throw InputError(std::string("search spec: ") + what + " cell index out of range");
    };
    std::map<Cell, int> fixed_at;
    for (const auto& f : spec.fixed) {
        check_cell(f[0], f[1], f[2], "fixed");
        if (f[3] < 0)
            throw InputError("search spec: negative fixed entry");
        auto [it, inserted] = fixed_at.emplace(Cell{f[0], f[1], f[2]}, f[3]);
        if (!inserted && it->second != f[3])
            throw InputError("search spec: " + cell_name(spec.labels, f[0], f[1], f[2]) +
                             " fixed twice with different values");
    }
    if (spec.free)
        for (const auto& f : *spec.free)
            check_cell(f[0], f[1], f[2], "free");
    for (const auto& b : spec.bounds) {
        check_cell(b[0], b[1], b[2], "bound");
        if (b[3] < 0)
            throw InputError("search spec: negative bound");
    }
    if (spec.global_bound && *spec.global_bound < 0)
        throw InputError("search spec: negative global bound");
    if (spec.relabel_group)
        for (const auto& p : *spec.relabel_group) {
            if (!is_permutation_of(p, n) || p[0] != 0)
                throw InputError("relabel_group: entries must be permutations fixing the unit");
            for (std::size_t a = 0; a < n; ++a)
                if (spec.dims[p[a]] != spec.dims[a])
                    throw InputError("relabel_group: permutation does not preserve dimensions");
        }
}

ForcedEntries derive_forced_entries(const SearchSpec& spec, const SearchOptions& options)
{
    validate_spec(spec);
    for (int d : spec.dual)
        if (d < 0)
            throw InputError("derive_forced_entries needs a fully specified dual");
    Domains dom;
    Model m;
    try {
        m = build_model(spec, spec.dual, options.use_pointed_action, dom);
        propagate(m, dom);
    } catch (const Contradiction& c) {
        throw InconsistencyError(std::string("unsatisfiable: ") + c.what());
    }

    ForcedEntries out;
    out.spec = spec;
    const int n = m.n;
    for (int c = 0; c < n * n * n; ++c) {
        const int o = m.orbit_of[c];
        const Cell x = m.cell(c);
        if (dom.lo[o] != dom.hi[o]) {
            out.open.push_back(x);
            continue;
        }
        if (m.given[c])
            continue;
        out.spec.fixed.push_back({x[0], x[1], x[2], dom.lo[o]});
        ++out.forced_cells;
    }
    return out;
}

SearchResult complete_fusion_rings(const SearchSpec& spec, const SearchOptions& options)
{
    validate_spec(spec);
    const GradingLaw grading = grading_law(spec);
    std::vector<std::vector<int>> duals;
    {
        std::vector<int> dual = spec.dual;
        dual[0] = 0;
        enumerate_duals(spec, grading, dual, 0, duals);
    }
    const bool dual_known =
        std::none_of(spec.dual.begin(), spec.dual.end(), [](int d) { return d < 0; });

    SearchResult result;
    result.stats.dual_choices = duals.size();
    Shared shared;
    shared.cap = options.node_cap;
    bool first = true;
    for (const auto& dual : duals) {
        Domains dom;
        Model m;
        try {
            m = build_model(spec, dual, options.use_pointed_action, dom);
            propagate(m, dom);
        } catch (const Contradiction& c) {
            if (dual_known)
                throw InputError(std::string("inconsistent spec: ") + c.what());
            ++result.stats.contradictions;
            continue;
        }
        if (first) {
            for (std::size_t c = 0; c < m.orbit_of.size(); ++c) {
                const int o = m.orbit_of[c];
                if (dom.lo[o] == dom.hi[o] && !m.given[c])
                    ++result.stats.forced_cells;
            }
            for (std::size_t o = 0; o < dom.lo.size(); ++o)
                result.stats.free_orbits += dom.lo[o] != dom.hi[o];
            first = false;
        }
        auto rings = search_root(m, dom, shared, options.workers, result.stats);
        for (auto& r : rings)
            result.raw.push_back(std::move(r));
        if (shared.aborted)
            break;
    }
    if (shared.aborted) {
        std::ostringstream os;
        os << "node cap " << options.node_cap << " exceeded after " << result.stats.nodes
           << " nodes (" << result.raw.size() << " completions, " << result.stats.contradictions
           << " pruned branches so far)";
        throw CapacityError(os.str());
    }
    std::sort(result.raw.begin(), result.raw.end(), ring_less);

    const std::size_t n = spec.rank();
    const std::size_t rank_cap = std::max<std::size_t>(16, n);
    std::vector<std::vector<int>> group;
    if (spec.relabel_group)
        group = group_closure(*spec.relabel_group, n);

    struct Class {
        std::string key;
        std::string class_key;
        const FusionRing* rep;
    };
    std::vector<Class> classes;
    std::set<std::string> seen;
    for (const auto& ring : result.raw) {
        std::string class_key;
        if (spec.relabel_group) {
            FusionRing best;
            bool have = false;
            for (const auto& p : group) {
                FusionRing r = ring.relabeled(p);
                if (!have || ring_less(r, best)) {
                    best = std::move(r);
                    have = true;
                }
            }
            std::ostringstream os;
            for (int d : best.duals())
                os << d << ',';
            os << '|';
            for (int v : best.tensor())
                os << v << ',';
            class_key = os.str();
        } else {
            class_key = canonical_form(ring, rank_cap).key;
        }
        if (!seen.insert(class_key).second)
            continue;
        classes.push_back({canonical_form(ring, rank_cap).key, class_key, &ring});
    }
    std::stable_sort(classes.begin(), classes.end(), [](const Class& a, const Class& b) {
        return std::tie(a.key, a.class_key) < std::tie(b.key, b.class_key);
    });
    for (const auto& c : classes) {
        result.rings.push_back(*c.rep);
        result.keys.push_back(c.key);
    }
    return result;
}

} // namespace fusionkit
