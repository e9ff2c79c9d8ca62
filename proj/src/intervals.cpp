#include "covenc/intervals.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace covenc {

namespace {

constexpr int bucket_x = static_cast<int>(edge_class::x);
constexpr int bucket_y = static_cast<int>(edge_class::y);
constexpr int bucket_s = static_cast<int>(edge_class::s);
constexpr int bucket_f = static_cast<int>(edge_class::f);
constexpr int bucket_m = static_cast<int>(edge_class::m);
constexpr int bucket_defs = 5;

int floor_lg(int n) { return std::bit_width(static_cast<unsigned>(n)) - 1; }
int ceil_div(int a, int b) { return (a + b - 1) / b; }

// 0-based slot of interval [i,j] in an interval-indexed vector.
int rank(int n, int i, int j) { return interval_vertex(n, i, j) - 1; }

void check_instance(const ipt_instance& inst, bool need_z) {
    if (inst.n < 2) throw std::invalid_argument("ipt instance needs n >= 2");
    const auto pairs = static_cast<std::size_t>(interval_count(inst.n));
    if (inst.x.size() != pairs || inst.t.size() != static_cast<std::size_t>(inst.n))
        throw std::invalid_argument("ipt instance vectors do not match n");
    for (int code : inst.x)
        if (code == 0) throw std::invalid_argument("x literal must be nonzero");
    for (int v : inst.t)
        if (v <= 0) throw std::invalid_argument("t variable must be positive");
    if (!need_z) return;
    if (inst.z.size() != pairs)
        throw std::invalid_argument("ipt instance vectors do not match n");
    for (int v : inst.z)
        if (v <= 0) throw std::invalid_argument("z variable must be positive");
}

void check_lits(int n, std::span<const int> lits) {
    if (n < 2) throw std::invalid_argument("interval encoders need n >= 2");
    if (lits.size() != static_cast<std::size_t>(interval_count(n)))
        throw std::invalid_argument("vertex literal span does not match interval count");
    for (int code : lits)
        if (code == 0) throw std::invalid_argument("vertex literal code must be nonzero");
}

void check_pool_covers(std::span<const int> lits, const var_map& pool) {
    for (int code : lits)
        if (std::abs(code) > pool.size())
            throw std::invalid_argument("vertex literals mention variables outside the pool");
}

// t-coverage long clauses, shared by both position encoders.
void emit_t_long(const ipt_instance& inst, formula& out) {
    for (int l = 1; l <= inst.n; ++l) {
        std::vector<int> codes{-inst.t[l - 1]};
        for (int i = 1; i <= l; ++i)
            for (int j = std::max(l, i + 1); j <= inst.n; ++j)
                codes.push_back(inst.x[rank(inst.n, i, j)]);
        out.add(clause(codes));
    }
}

void put(formula& out, interval_isp_parts* parts, int route, int bucket, clause c) {
    if (parts) {
        const int slot = route >= 0 ? route : bucket;
        (slot == bucket_defs ? parts->defs : parts->by_class[slot]).add(c);
    }
    out.add(std::move(c));
}

void emit_direct(int n, interval_variant variant, std::span<const int> lits,
                 interval_isp_parts* parts, int route, formula& out) {
    const int m = interval_count(n);
    for (int u = 1; u <= m; ++u) {
        const interval a = vertex_interval(n, u);
        for (int v = u + 1; v <= m; ++v)
            if (intervals_conflict(a, vertex_interval(n, v), variant))
                put(out, parts, route, bucket_x, clause{-lits[u - 1], -lits[v - 1]});
    }
}

struct block_split {
    int k = 0;
    int b = 0;
    std::vector<std::pair<int, int>> range;   // block d covers range[d-1], inclusive
};

// Parameter sanity is checked up front so bad requests fail even when the
// instance is small enough to bypass the split entirely.
void check_split_request(int n, int k_req, int b_req) {
    if (k_req < 0 || b_req < 0)
        throw std::invalid_argument("block parameters must be nonnegative");
    if (k_req > 0 && b_req > 0 && static_cast<long long>(k_req) * b_req < n)
        throw std::invalid_argument("k * b must cover all positions");
}

block_split derive_blocks(int n, int k_req, int b_req) {
    check_split_request(n, k_req, b_req);
    const int k0 = k_req > 0 ? k_req : std::max(2, std::min(n - 1, floor_lg(n)));
    const int b = b_req > 0 ? b_req : ceil_div(n, k0);
    block_split out;
    out.b = b;
    out.k = ceil_div(n, b);                   // effective count, no empty tail blocks
    out.range.reserve(out.k);
    for (int d = 1; d <= out.k; ++d)
        out.range.emplace_back((d - 1) * b + 1, std::min(d * b, n));
    return out;
}

// Emits the block-decomposition encoding of the n-position instance whose
// vertex v is selected by lits[v-1]. one_level replaces every recursive
// position with its direct encoding. route, when nonnegative, files all
// emitted clauses under that class on behalf of an enclosing instance.
void emit_block_isp(int n, interval_variant variant, int k_req, int b_req, int base,
                    bool one_level, std::span<const int> lits, var_map& pool,
                    int& instance, interval_isp_parts* parts, int route, formula& out) {
    if (n <= (one_level ? 5 : base)) {
        emit_direct(n, variant, lits, parts, route, out);
        return;
    }
    const block_split bs = derive_blocks(n, k_req, b_req);
    const int k = bs.k;
    if (k < 2 || bs.b < 2 || bs.b >= n)
        throw std::invalid_argument("block split must shrink the instance");
    const int inst = instance++;
    const int x_route = route >= 0 ? route : bucket_x;
    const int y_route = route >= 0 ? route : bucket_y;
    const bool strict = variant == interval_variant::overlap2;
    const int nverts = interval_count(n);

    // Same block pattern at both endpoints: re-encode each block, and each
    // block pair as the order-preserving concatenation of its positions, over
    // the original selector literals. Both conflict rules compare endpoint
    // order only, so the concatenated instance has exactly the same conflicts.
    for (int d = 1; d <= k; ++d) {
        const auto [lo, hi] = bs.range[d - 1];
        const int s = hi - lo + 1;
        if (s < 2) continue;
        std::vector<int> sub(interval_count(s));
        for (int p = 1; p < s; ++p)
            for (int q = p + 1; q <= s; ++q)
                sub[rank(s, p, q)] = lits[rank(n, lo + p - 1, lo + q - 1)];
        if (one_level) emit_direct(s, variant, sub, parts, x_route, out);
        else emit_block_isp(s, variant, 0, 0, base, false, sub, pool, instance, parts,
                            x_route, out);
    }
    for (int l = 1; l < k; ++l)
        for (int r = l + 1; r <= k; ++r) {
            std::vector<int> pos;
            for (int i = bs.range[l - 1].first; i <= bs.range[l - 1].second; ++i)
                pos.push_back(i);
            for (int j = bs.range[r - 1].first; j <= bs.range[r - 1].second; ++j)
                pos.push_back(j);
            const int m = static_cast<int>(pos.size());
            if (m == n) {
                // k == 2, so the pair is the whole line; recursing would not
                // shrink it. Only block-spanning pairs still need clauses
                // here, the rest belongs to the other families.
                std::vector<int> crossing;
                for (int i = bs.range[l - 1].first; i <= bs.range[l - 1].second; ++i)
                    for (int j = bs.range[r - 1].first; j <= bs.range[r - 1].second; ++j)
                        crossing.push_back(interval_vertex(n, i, j));
                for (std::size_t a = 0; a < crossing.size(); ++a)
                    for (std::size_t c = a + 1; c < crossing.size(); ++c)
                        if (intervals_conflict(vertex_interval(n, crossing[a]),
                                               vertex_interval(n, crossing[c]), variant))
                            put(out, parts, route, bucket_x,
                                clause{-lits[crossing[a] - 1], -lits[crossing[c] - 1]});
                continue;
            }
            std::vector<int> sub(interval_count(m));
            for (int p = 1; p < m; ++p)
                for (int q = p + 1; q <= m; ++q)
                    sub[rank(m, p, q)] = lits[rank(n, pos[p - 1], pos[q - 1])];
            if (one_level) emit_direct(m, variant, sub, parts, x_route, out);
            else emit_block_isp(m, variant, 0, 0, base, false, sub, pool, instance, parts,
                                x_route, out);
        }

    // y layer: one selector per realized block pattern, including the
    // within-block pattern (l, l) wherever the block can hold an interval.
    std::vector<std::vector<int>> y_id(k + 1, std::vector<int>(k + 1, 0));
    for (int l = 1; l <= k; ++l)
        for (int r = l; r <= k; ++r) {
            if (l == r && bs.range[l - 1].second - bs.range[l - 1].first < 1) continue;
            y_id[l][r] = pool.fresh("isp-y", {inst, l, r});
        }
    std::vector<std::vector<int>> pattern(static_cast<std::size_t>(k) * k);
    for (int v = 1; v <= nverts; ++v) {
        const interval iv = vertex_interval(n, v);
        const int bl = block_of(iv.lo, bs.b);
        const int br = block_of(iv.hi, bs.b);
        put(out, parts, route, bucket_defs, clause{-lits[v - 1], y_id[bl][br]});
        pattern[static_cast<std::size_t>(bl - 1) * k + (br - 1)].push_back(lits[v - 1]);
    }
    for (int l = 1; l <= k; ++l)
        for (int r = l; r <= k; ++r) {
            if (y_id[l][r] == 0) continue;
            std::vector<int> codes{-y_id[l][r]};
            for (int code : pattern[static_cast<std::size_t>(l - 1) * k + (r - 1)])
                codes.push_back(code);
            put(out, parts, route, bucket_defs, clause(codes));
        }
    if (one_level) {
        // Block patterns (l1,r1), (l2,r2) with l1 < l2 < r1 clash whatever the
        // positions: the earlier selection runs past the start block of the
        // later one. This covers the within-block pattern l2 == r2 as well.
        for (int l1 = 1; l1 <= k; ++l1)
            for (int r1 = l1; r1 <= k; ++r1) {
                if (y_id[l1][r1] == 0) continue;
                for (int l2 = l1 + 1; l2 < r1; ++l2)
                    for (int r2 = l2; r2 <= k; ++r2)
                        if (y_id[l2][r2] != 0)
                            put(out, parts, route, bucket_y,
                                clause{-y_id[l1][r1], -y_id[l2][r2]});
            }
    } else {
        // A spanning selection blankets every interior block, so it excludes
        // the within-block selectors there.
        for (int l = 1; l <= k; ++l)
            for (int r = l + 1; r <= k; ++r)
                for (int d = l + 1; d < r; ++d)
                    if (y_id[d][d] != 0)
                        put(out, parts, route, bucket_y, clause{-y_id[l][r], -y_id[d][d]});
        // Spanning patterns, read as intervals over block indices, conflict
        // exactly when they share two blocks or one strictly interior block;
        // the former is the two-shared-position rule on k positions and the
        // latter was just emitted, so recurse under that rule.
        std::vector<int> sub(interval_count(k));
        for (int l = 1; l < k; ++l)
            for (int r = l + 1; r <= k; ++r)
                sub[rank(k, l, r)] = y_id[l][r];
        emit_block_isp(k, interval_variant::overlap2, 0, 0, base, false, sub, pool,
                       instance, parts, y_route, out);
    }

    // Per-block position coverage: t flags positions covered by a selection
    // that stays inside the block. The s, f and mixed families below consult
    // it, so its chain goes into the defining layer.
    std::vector<std::vector<int>> t_id(k + 1);
    for (int d = 1; d <= k; ++d) {
        const auto [lo, hi] = bs.range[d - 1];
        const int s = hi - lo + 1;
        if (s < 2) continue;
        ipt_instance bi;
        bi.n = s;
        bi.x.resize(interval_count(s));
        for (int p = 1; p < s; ++p)
            for (int q = p + 1; q <= s; ++q)
                bi.x[rank(s, p, q)] = lits[rank(n, lo + p - 1, lo + q - 1)];
        bi.t.reserve(s);
        for (int p = lo; p <= hi; ++p) bi.t.push_back(pool.fresh("isp-t", {inst, p}));
        bi.z.resize(interval_count(s));
        for (int p = 1; p < s; ++p)
            for (int q = p + 1; q <= s; ++q)
                bi.z[rank(s, p, q)] = pool.fresh("isp-z", {inst, lo + p - 1, lo + q - 1});
        for (const clause& c : encode_ipt(bi)) put(out, parts, route, bucket_defs, c);
        t_id[d] = std::move(bi.t);
    }

    // Crossing selectors: s_{i,r} for a selection starting at i and ending in
    // the later block r, f_{l,j} for one ending at j and starting in the
    // earlier block l.
    std::vector<std::vector<int>> s_id(n + 1, std::vector<int>(k + 1, 0));
    for (int i = 1; i <= n; ++i)
        for (int r = block_of(i, bs.b) + 1; r <= k; ++r)
            s_id[i][r] = pool.fresh("isp-s", {inst, i, r});
    std::vector<std::vector<int>> f_id(n + 1, std::vector<int>(k + 1, 0));
    for (int j = 1; j <= n; ++j)
        for (int l = 1; l < block_of(j, bs.b); ++l)
            f_id[j][l] = pool.fresh("isp-f", {inst, l, j});
    for (int v = 1; v <= nverts; ++v) {
        const interval iv = vertex_interval(n, v);
        const int bl = block_of(iv.lo, bs.b);
        const int br = block_of(iv.hi, bs.b);
        if (bl == br) continue;
        put(out, parts, route, bucket_defs, clause{-lits[v - 1], s_id[iv.lo][br]});
        put(out, parts, route, bucket_defs, clause{-lits[v - 1], f_id[iv.hi][bl]});
    }
    for (int i = 1; i <= n; ++i)
        for (int r = block_of(i, bs.b) + 1; r <= k; ++r) {
            std::vector<int> codes{-s_id[i][r]};
            for (int j = bs.range[r - 1].first; j <= bs.range[r - 1].second; ++j)
                codes.push_back(lits[rank(n, i, j)]);
            put(out, parts, route, bucket_defs, clause(codes));
        }
    for (int j = 1; j <= n; ++j)
        for (int l = 1; l < block_of(j, bs.b); ++l) {
            std::vector<int> codes{-f_id[j][l]};
            for (int i = bs.range[l - 1].first; i <= bs.range[l - 1].second; ++i)
                codes.push_back(lits[rank(n, i, j)]);
            put(out, parts, route, bucket_defs, clause(codes));
        }

    // Two selections crossing out of the same block always collide, whatever
    // their far blocks; likewise two crossing into the same block.
    for (int d = 1; d <= k; ++d) {
        const auto [lo, hi] = bs.range[d - 1];
        for (int i1 = lo; i1 <= hi; ++i1)
            for (int i2 = i1; i2 <= hi; ++i2)
                for (int r1 = d + 1; r1 <= k; ++r1)
                    for (int r2 = (i1 == i2 ? r1 + 1 : d + 1); r2 <= k; ++r2) {
                        if (r1 == r2) continue;
                        put(out, parts, route, bucket_s,
                            clause{-s_id[i1][r1], -s_id[i2][r2]});
                    }
        for (int j1 = lo; j1 <= hi; ++j1)
            for (int j2 = j1; j2 <= hi; ++j2)
                for (int l1 = 1; l1 < d; ++l1)
                    for (int l2 = (j1 == j2 ? l1 + 1 : 1); l2 < d; ++l2) {
                        if (l1 == l2) continue;
                        put(out, parts, route, bucket_f,
                            clause{-f_id[j1][l1], -f_id[j2][l2]});
                    }
    }

    // A within-block selection covering a position at or past the start of an
    // outgoing crossing collides with it; under the two-shared-position rule
    // the start position itself is not enough. Mirrored for incoming
    // crossings, and for the incoming-versus-outgoing mix.
    for (int d = 1; d <= k; ++d) {
        const auto [lo, hi] = bs.range[d - 1];
        if (!t_id[d].empty()) {
            for (int i = lo; i <= hi; ++i)
                for (int p = strict ? i + 1 : i; p <= hi; ++p)
                    for (int r = d + 1; r <= k; ++r)
                        put(out, parts, route, bucket_s,
                            clause{-t_id[d][p - lo], -s_id[i][r]});
            for (int j = lo; j <= hi; ++j)
                for (int p = lo; p <= (strict ? j - 1 : j); ++p)
                    for (int l = 1; l < d; ++l)
                        put(out, parts, route, bucket_f,
                            clause{-t_id[d][p - lo], -f_id[j][l]});
        }
        for (int j1 = lo; j1 <= hi; ++j1)
            for (int i2 = lo; i2 <= (strict ? j1 - 1 : j1); ++i2)
                for (int l = 1; l < d; ++l)
                    for (int r = d + 1; r <= k; ++r)
                        put(out, parts, route, bucket_m,
                            clause{-f_id[j1][l], -s_id[i2][r]});
    }
}

}  // namespace

ipt_instance make_ipt_instance(int n, var_map& pool) {
    if (n < 2) throw std::invalid_argument("ipt instance needs n >= 2");
    ipt_instance inst;
    inst.n = n;
    inst.x.resize(interval_count(n));
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) inst.x[rank(n, i, j)] = pool.fresh("x", {i, j});
    for (int l = 1; l <= n; ++l) inst.t.push_back(pool.fresh("t", {l}));
    inst.z.resize(interval_count(n));
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) inst.z[rank(n, i, j)] = pool.fresh("z", {i, j});
    return inst;
}

formula encode_nip(const ipt_instance& inst) {
    check_instance(inst, false);
    formula out;
    emit_t_long(inst, out);
    for (int i = 1; i < inst.n; ++i)
        for (int j = i + 1; j <= inst.n; ++j)
            for (int l = i; l <= j; ++l)
                out.add(clause{-inst.x[rank(inst.n, i, j)], inst.t[l - 1]});
    return out;
}

formula encode_ipt(const ipt_instance& inst) {
    check_instance(inst, true);
    const int n = inst.n;
    formula out;
    emit_t_long(inst, out);
    // Selected intervals raise their own z.
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j)
            out.add(clause{-inst.x[rank(n, i, j)], inst.z[rank(n, i, j)]});
    // Covered length-two ranges fire both endpoint flags.
    for (int i = 1; i < n; ++i) {
        out.add(clause{-inst.z[rank(n, i, i + 1)], inst.t[i - 1]});
        out.add(clause{-inst.z[rank(n, i, i + 1)], inst.t[i]});
    }
    // Coverage passes down to both one-shorter subranges.
    for (int i = 1; i < n; ++i)
        for (int j = i + 2; j <= n; ++j) {
            out.add(clause{-inst.z[rank(n, i, j)], inst.z[rank(n, i + 1, j)]});
            out.add(clause{-inst.z[rank(n, i, j)], inst.z[rank(n, i, j - 1)]});
        }
    // A raised z traces back to a selection: the range is selected itself or
    // some one-longer extension is covered.
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            std::vector<int> codes{-inst.z[rank(n, i, j)], inst.x[rank(n, i, j)]};
            if (i > 1) codes.push_back(inst.z[rank(n, i - 1, j)]);
            if (j < n) codes.push_back(inst.z[rank(n, i, j + 1)]);
            out.add(clause(codes));
        }
    return out;
}

formula encode_interval_isp_direct(int n, interval_variant variant,
                                   std::span<const int> vertex_lits) {
    check_lits(n, vertex_lits);
    formula out;
    emit_direct(n, variant, vertex_lits, nullptr, -1, out);
    return out;
}

formula encode_interval_isp_recursive(const block_encoder_params& p,
                                      std::span<const int> vertex_lits, var_map& pool) {
    check_lits(p.n, vertex_lits);
    check_pool_covers(vertex_lits, pool);
    check_split_request(p.n, p.k, p.b);
    if (p.recursion_base < 2)
        throw std::invalid_argument("recursion base must be at least 2");
    formula out;
    int instance = 1;
    emit_block_isp(p.n, p.variant, p.k, p.b, p.recursion_base, false, vertex_lits, pool,
                   instance, nullptr, -1, out);
    return out;
}

formula encode_interval_isp_block83(int n, interval_variant variant,
                                    std::span<const int> vertex_lits, var_map& pool) {
    check_lits(n, vertex_lits);
    check_pool_covers(vertex_lits, pool);
    // Smallest k with k^3 >= n^2.
    int k = static_cast<int>(std::cbrt(static_cast<double>(n) * n));
    while (static_cast<long long>(k) * k * k < static_cast<long long>(n) * n) ++k;
    while (k > 1 &&
           static_cast<long long>(k - 1) * (k - 1) * (k - 1) >= static_cast<long long>(n) * n)
        --k;
    formula out;
    int instance = 1;
    emit_block_isp(n, variant, k, 0, 5, true, vertex_lits, pool, instance, nullptr, -1, out);
    return out;
}

interval_isp_parts encode_interval_isp_recursive_parts(const block_encoder_params& p,
                                                       std::span<const int> vertex_lits,
                                                       var_map& pool) {
    check_lits(p.n, vertex_lits);
    check_pool_covers(vertex_lits, pool);
    check_split_request(p.n, p.k, p.b);
    if (p.recursion_base < 2)
        throw std::invalid_argument("recursion base must be at least 2");
    interval_isp_parts parts;
    int instance = 1;
    emit_block_isp(p.n, p.variant, p.k, p.b, p.recursion_base, false, vertex_lits, pool,
                   instance, &parts, -1, parts.full);
    return parts;
}

}  // namespace covenc
