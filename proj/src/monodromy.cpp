#include "schwarzf2/monodromy.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace schwarzf2 {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw OverflowError("Gaussian matrix entry exceeds the int64 range");
    return static_cast<std::int64_t>(v);
}

GaussInt mul_i(GaussInt g, int k)
{
    switch (((k % 4) + 4) % 4) {
    case 0: return g;
    case 1: return {narrow(-static_cast<i128>(g.im)), g.re};
    case 2: return {narrow(-static_cast<i128>(g.re)), narrow(-static_cast<i128>(g.im))};
    default: return {g.im, narrow(-static_cast<i128>(g.re))};
    }
}

GaussInt add(GaussInt a, GaussInt b)
{
    return {narrow(static_cast<i128>(a.re) + b.re), narrow(static_cast<i128>(a.im) + b.im)};
}

GaussInt sub(GaussInt a, GaussInt b)
{
    return {narrow(static_cast<i128>(a.re) - b.re), narrow(static_cast<i128>(a.im) - b.im)};
}

GaussInt mul(GaussInt a, GaussInt b)
{
    const i128 re = static_cast<i128>(a.re) * b.re - static_cast<i128>(a.im) * b.im;
    const i128 im = static_cast<i128>(a.re) * b.im + static_cast<i128>(a.im) * b.re;
    return {narrow(re), narrow(im)};
}

using Mat = GaussianMatrix::Entries;

GaussInt det_n(const std::vector<std::vector<GaussInt>>& m)
{
    const std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    if (n == 2)
        return sub(mul(m[0][0], m[1][1]), mul(m[0][1], m[1][0]));
    GaussInt acc{0, 0};
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero())
            continue;
        std::vector<std::vector<GaussInt>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<GaussInt> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(m[r][k]);
            minor.push_back(row);
        }
        const GaussInt term = mul(m[0][c], det_n(minor));
        acc = c % 2 == 0 ? add(acc, term) : sub(acc, term);
    }
    return acc;
}

std::vector<std::vector<GaussInt>> to_vec(const Mat& a)
{
    std::vector<std::vector<GaussInt>> m(4, std::vector<GaussInt>(4));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            m[r][c] = a[r][c];
    return m;
}

} // namespace

GaussianMatrix::GaussianMatrix()
{
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            a_[r][c] = {r == c ? 1 : 0, 0};
}

GaussianMatrix GaussianMatrix::from_integer(const IntEntries& a, int phase)
{
    GaussianMatrix g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            g.a_[r][c] = {a[r][c], 0};
    g.phase_ = ((phase % 4) + 4) % 4;
    g.canonicalize();
    return g;
}

GaussianMatrix GaussianMatrix::from_gaussian(const Entries& a, int phase)
{
    GaussianMatrix g;
    g.a_ = a;
    g.phase_ = ((phase % 4) + 4) % 4;
    g.canonicalize();
    return g;
}

GaussInt GaussianMatrix::value(int r, int c) const { return mul_i(a_[r][c], phase_); }

bool GaussianMatrix::real_form() const
{
    for (const auto& row : a_)
        for (const auto& e : row)
            if (e.im != 0)
                return false;
    return true;
}

void GaussianMatrix::canonicalize()
{
    Mat v;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            v[r][c] = mul_i(a_[r][c], phase_);
    bool all_real = true, all_imag = true;
    for (const auto& row : v)
        for (const auto& e : row) {
            all_real = all_real && e.im == 0;
            all_imag = all_imag && e.re == 0;
        }
    if (all_real || !all_imag) {
        a_ = v;
        phase_ = 0;
        return;
    }
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            a_[r][c] = mul_i(v[r][c], -1);
    phase_ = 1;
}

GaussianMatrix GaussianMatrix::operator*(const GaussianMatrix& o) const
{
    GaussianMatrix out;
    if (real_form() && o.real_form()) {
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                i128 s = 0;
                for (int k = 0; k < 4; ++k)
                    s += static_cast<i128>(a_[r][k].re) * o.a_[k][c].re;
                out.a_[r][c] = {narrow(s), 0};
            }
    } else {
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                GaussInt s{0, 0};
                for (int k = 0; k < 4; ++k)
                    s = add(s, mul(a_[r][k], o.a_[k][c]));
                out.a_[r][c] = s;
            }
    }
    out.phase_ = (phase_ + o.phase_) % 4;
    out.canonicalize();
    return out;
}

GaussianMatrix GaussianMatrix::scaled_by_i(int k) const
{
    GaussianMatrix out = *this;
    out.phase_ = (((phase_ + k) % 4) + 4) % 4;
    out.canonicalize();
    return out;
}

GaussianMatrix GaussianMatrix::operator-() const { return scaled_by_i(2); }

GaussInt GaussianMatrix::det_entries() const { return det_n(to_vec(a_)); }

GaussianMatrix GaussianMatrix::inverse() const
{
    const GaussInt det = det_entries();
    int unit = -1;
    for (int k = 0; k < 4; ++k)
        if (mul_i(GaussInt{1, 0}, k) == det)
            unit = k;
    if (unit < 0)
        throw DomainError("matrix is not invertible over the Gaussian integers");
    const auto m = to_vec(a_);
    Mat adj;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            std::vector<std::vector<GaussInt>> minor;
            for (int rr = 0; rr < 4; ++rr) {
                if (rr == c)
                    continue;
                std::vector<GaussInt> row;
                for (int cc = 0; cc < 4; ++cc)
                    if (cc != r)
                        row.push_back(m[rr][cc]);
                minor.push_back(row);
            }
            const GaussInt d = det_n(minor);
            adj[r][c] = (r + c) % 2 == 0 ? d : mul_i(d, 2);
        }
    GaussianMatrix out;
    out.a_ = adj;
    // (i^p A)^{-1} = i^{-p} adj(A) / det(A) and 1/i^unit = i^{-unit}.
    out.phase_ = (((-phase_ - unit) % 4) + 4) % 4;
    out.canonicalize();
    return out;
}

GaussianMatrix GaussianMatrix::pow(std::int64_t n) const
{
    GaussianMatrix base = n < 0 ? inverse() : *this;
    std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    GaussianMatrix acc;
    while (e > 0) {
        if (e & 1u)
            acc = acc * base;
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return acc;
}

std::string GaussianMatrix::to_string() const
{
    std::ostringstream os;
    if (phase_ != 0)
        os << "i^" << phase_ << " * ";
    os << "[";
    for (int r = 0; r < 4; ++r) {
        os << (r ? ", [" : "[");
        for (int c = 0; c < 4; ++c) {
            const GaussInt e = a_[r][c];
            if (c)
                os << ", ";
            if (e.im == 0)
                os << e.re;
            else
                os << e.re << (e.im < 0 ? "-" : "+") << (e.im < 0 ? -e.im : e.im) << "i";
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

const std::array<GaussianMatrix, 5>& generators()
{
    static const std::array<GaussianMatrix, 5> gens = {
        GaussianMatrix::from_integer({{{0, 1, 0, 0}, {-1, 0, 0, 0}, {-1, 0, 0, 1}, {0, 1, -1, 0}}}, 1),
        GaussianMatrix::from_integer({{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}}, 1),
        GaussianMatrix::from_integer({{{1, 2, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}),
        GaussianMatrix::from_integer({{{2, 1, 0, 0}, {-1, 0, 0, 0}, {-1, -1, 1, 0}, {0, 0, 0, 1}}}),
        GaussianMatrix::from_integer({{{2, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}),
    };
    return gens;
}

MembershipWitness is_in_M(const GaussianMatrix& g)
{
    MembershipWitness w;
    auto block22 = [&](int r, int c) { return g.value(2 + r, 2 + c); };
    const GaussInt zero{0, 0}, one{1, 0}, mone{-1, 0}, i{0, 1}, mi{0, -1};
    auto match = [&](GaussInt a, GaussInt b, GaussInt c, GaussInt d) {
        return block22(0, 0) == a && block22(0, 1) == b && block22(1, 0) == c && block22(1, 1) == d;
    };
    // E2, i J2, -i J2, -E2 with J2 = [[0,-1],[1,0]].
    if (match(one, zero, zero, one)) {
        w.n1 = 0; w.n2 = 0;
    } else if (match(zero, mi, i, zero)) {
        w.n1 = 0; w.n2 = 1;
    } else if (match(zero, i, mi, zero)) {
        w.n1 = 1; w.n2 = 0;
    } else if (match(mone, zero, zero, mone)) {
        w.n1 = 1; w.n2 = 1;
    } else {
        w.reason = "(2,2)-block is not one of E2, iJ2, -iJ2, -E2";
        return w;
    }
    const int scalar = -w.n1 + w.n2;
    std::array<std::array<std::int64_t, 4>, 4> r{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const GaussInt e = mul_i(g.value(a, b), -scalar);
            if (e.im != 0) {
                w.reason = "entries are not real after removing the scalar i^(-n1+n2)";
                return w;
            }
            r[a][b] = e.re;
        }
    for (int a = 0; a < 2; ++a)
        for (int b = 2; b < 4; ++b)
            if (r[a][b] != 0) {
                w.reason = "(1,2)-block is not zero";
                return w;
            }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            w.G[a][b] = r[a][b];
            w.L[a][b] = r[2 + a][b];
        }
    const i128 det = static_cast<i128>(w.G[0][0]) * w.G[1][1] - static_cast<i128>(w.G[0][1]) * w.G[1][0];
    if (det != 1) {
        w.reason = "(1,1)-block does not have determinant 1";
        return w;
    }
    if (!igusa_membership({w.G[0][0], w.G[0][1], w.G[1][0], w.G[1][1]})) {
        w.reason = "(1,1)-block is not in the Igusa group";
        return w;
    }
    auto parity = [](std::int64_t a, std::int64_t b) {
        return static_cast<int>(((static_cast<i128>(a) + b) % 2 + 2) % 2);
    };
    if (parity(w.L[0][0], w.L[0][1]) != w.n1 || parity(w.L[1][0], w.L[1][1]) != w.n1) {
        w.reason = "row sums of the (2,1)-block do not match n1 mod 2";
        return w;
    }
    w.member = true;
    return w;
}

GaussianMatrix evaluate(const Word& w)
{
    GaussianMatrix acc;
    for (const Letter& l : w) {
        if (l.gen < 1 || l.gen > 5)
            throw DomainError("generator index must be in 1..5");
        acc = acc * generators()[l.gen - 1].pow(l.power);
    }
    return acc;
}

std::string word_to_string(const Word& w)
{
    if (w.empty())
        return "E4";
    std::ostringstream os;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k)
            os << ' ';
        os << 'M' << w[k].gen;
        if (w[k].power != 1)
            os << '^' << w[k].power;
    }
    return os.str();
}

Word simplify(const Word& w)
{
    Word out;
    for (Letter l : w) {
        if (l.gen == 1 || l.gen == 2)
            l.power = ((l.power % 2) + 2) % 2;
        if (!out.empty() && out.back().gen == l.gen) {
            out.back().power += l.power;
            if (out.back().gen <= 2)
                out.back().power %= 2;
            if (out.back().power == 0)
                out.pop_back();
            continue;
        }
        if (l.power != 0)
            out.push_back(l);
    }
    return out;
}

namespace {

Word inverse_word(const Word& w)
{
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back({it->gen, -it->power});
    return out;
}

void append(Word& w, const Word& tail) { w.insert(w.end(), tail.begin(), tail.end()); }

// Words X with X H1^c X^{-1}, H1 = M4 M5^{-1}, spanning the (2,1)-blocks.
const std::array<Word, 4>& l_block_conjugators()
{
    static const std::array<Word, 4> conj = {
        Word{},
        Word{{3, 1}, {5, 1}},
        Word{{2, 1}},
        Word{{2, 1}, {3, 1}, {5, 1}},
    };
    return conj;
}

// M4^c M5^{-c} equals H1^c: M4 and M5 share the unipotent (1,1)-block A and
// L1 (A - E) = 0.
Word h_power(int k, std::int64_t c)
{
    const Word& x = l_block_conjugators()[k];
    Word w = x;
    w.push_back({4, c});
    w.push_back({5, -c});
    append(w, inverse_word(x));
    return w;
}

std::array<std::int64_t, 4> l_of(const GaussianMatrix& h)
{
    // h must be [[E,0],[L,E]] in real form.
    if (!h.real_form() || h.phase() != 0)
        throw Error("internal: expected a real unipotent block matrix");
    const auto& a = h.entries();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const bool lower_left = r >= 2 && c < 2;
            if (!lower_left && a[r][c].re != (r == c ? 1 : 0))
                throw Error("internal: expected a real unipotent block matrix");
        }
    return {a[2][0].re, a[2][1].re, a[3][0].re, a[3][1].re};
}

// Solves sum_k c_k B_k = target over Z for the four basis blocks.
std::array<std::int64_t, 4> solve_l(const std::array<std::array<std::int64_t, 4>, 4>& basis,
                                    const std::array<std::int64_t, 4>& target)
{
    // Columns of m are the basis vectors.
    auto det4 = [](const std::array<std::array<i128, 4>, 4>& m) {
        auto det3 = [&](int skip_col) {
            i128 cols[3];
            int n = 0;
            for (int c = 0; c < 4; ++c)
                if (c != skip_col)
                    cols[n++] = c;
            auto e = [&](int r, int c) { return m[r][static_cast<int>(cols[c])]; };
            return e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1)) -
                   e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0)) +
                   e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0));
        };
        i128 d = 0;
        for (int c = 0; c < 4; ++c) {
            const i128 t = m[0][c] * det3(c);
            d += c % 2 == 0 ? t : -t;
        }
        return d;
    };
    std::array<std::array<i128, 4>, 4> m{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            m[r][c] = basis[c][r];
    const i128 d = det4(m);
    if (d == 0)
        throw Error("internal: degenerate L-block basis");
    std::array<std::int64_t, 4> out{};
    for (int k = 0; k < 4; ++k) {
        auto mk = m;
        for (int r = 0; r < 4; ++r)
            mk[r][k] = target[r];
        const i128 num = det4(mk);
        if (num % d != 0)
            throw NotMember("(2,1)-block is not in the span of the unipotent generators");
        out[k] = narrow(num / d);
    }
    return out;
}

} // namespace

Word decompose(const GaussianMatrix& g)
{
    const MembershipWitness wit = is_in_M(g);
    if (!wit.member)
        throw NotMember("matrix is not in the monodromy group: " + wit.reason);

    // (i) clear the (2,2)-block with the involution P in <M1, M2>.
    Word p;
    if (wit.n1 == 1)
        p.push_back({1, 1});
    if (wit.n2 == 1)
        p.push_back({2, 1});
    const GaussianMatrix gp = evaluate(p) * g;

    // (ii) reduce the (1,1)-block to E2 by left multiplication with M3^k and
    // S = M3 M5, whose (1,1)-block is J2^{-1}.
    std::int64_t a = wit.G[0][0], b = wit.G[0][1], c = wit.G[1][0], d = wit.G[1][1];
    if (gp.phase() != 0 || !gp.real_form())
        throw Error("internal: (2,2)-block was not cleared");
    {
        const auto& e = gp.entries();
        a = e[0][0].re; b = e[0][1].re; c = e[1][0].re; d = e[1][1].re;
    }
    std::vector<Word> ops; // left factors in the order applied
    const Word s_word = {{3, 1}, {5, 1}};
    int guard = 0;
    while (c != 0) {
        if (++guard > 200)
            throw Error("internal: Euclidean reduction did not terminate");
        // k minimising |a + 2 k c|.
        const i128 twoc = 2 * static_cast<i128>(c);
        i128 k0 = -static_cast<i128>(a) / twoc;
        i128 best = k0;
        auto cost = [&](i128 k) { const i128 v = a + k * twoc; return v < 0 ? -v : v; };
        for (i128 k = k0 - 1; k <= k0 + 1; ++k)
            if (cost(k) < cost(best))
                best = k;
        if (best != 0) {
            a = narrow(a + best * twoc);
            b = narrow(b + best * 2 * static_cast<i128>(d));
            ops.push_back({{3, narrow(best)}});
        }
        // Left multiplication by J2^{-1}: rows (r1, r2) -> (r2, -r1).
        const std::int64_t na = c, nb = d, nc = narrow(-static_cast<i128>(a)), nd = narrow(-static_cast<i128>(b));
        a = na; b = nb; c = nc; d = nd;
        ops.push_back(s_word);
    }
    if (a == -1) {
        ops.push_back(s_word);
        ops.push_back(s_word);
        a = 1; d = 1; b = narrow(-static_cast<i128>(b));
    }
    if (a != 1 || d != 1 || b % 2 != 0)
        throw Error("internal: (1,1)-block reduction ended off the identity");
    if (b != 0)
        ops.push_back({{3, -b / 2}});

    Word a_word; // A = ops.back() ... ops.front()
    for (auto it = ops.rbegin(); it != ops.rend(); ++it)
        append(a_word, *it);
    const GaussianMatrix h = evaluate(a_word) * gp;

    // (iii) express the (2,1)-block over the unipotent basis.
    std::array<std::array<std::int64_t, 4>, 4> basis;
    for (int k = 0; k < 4; ++k)
        basis[k] = l_of(evaluate(h_power(k, 1)));
    const auto coeff = solve_l(basis, l_of(h));

    Word out = p;
    append(out, inverse_word(a_word));
    for (int k = 0; k < 4; ++k)
        if (coeff[k] != 0)
            append(out, h_power(k, coeff[k]));
    out = simplify(out);
    if (evaluate(out) != g)
        throw Error("internal: decomposition does not evaluate back to the input");
    return out;
}

SignedWord decompose_signed(const GaussianMatrix& g)
{
    if (is_in_M(g).member)
        return {decompose(g), 1};
    const GaussianMatrix neg = -g;
    if (is_in_M(neg).member)
        return {decompose(neg), -1};
    throw NotMember("neither the matrix nor its negative lies in the monodromy group");
}

bool MatrixSet::make_key(const GaussianMatrix& g, Key& out)
{
    if (!g.real_form())
        return false;
    out.phase = static_cast<std::int8_t>(g.phase());
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const std::int64_t v = g.entries()[r][c].re;
            if (v > std::numeric_limits<std::int32_t>::max() || v < std::numeric_limits<std::int32_t>::min())
                return false;
            out.a[4 * r + c] = static_cast<std::int32_t>(v);
        }
    return true;
}

GaussianMatrix MatrixSet::operator[](std::size_t k) const
{
    const Key& key = keys_.at(k);
    GaussianMatrix::IntEntries a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            a[r][c] = key.a[4 * r + c];
    return GaussianMatrix::from_integer(a, key.phase);
}

bool MatrixSet::contains(const GaussianMatrix& g) const
{
    Key k;
    if (!make_key(g, k))
        return false;
    return std::binary_search(keys_.begin(), keys_.end(), k);
}

MatrixSet bfs_closure(int max_len, std::size_t cap)
{
    if (max_len < 0 || max_len > 10)
        throw DomainError("closure word length must be in 0..10");
    struct Hash {
        std::size_t operator()(const MatrixSet::Key& k) const
        {
            std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(k.phase);
            for (std::int32_t v : k.a) {
                h ^= static_cast<std::uint32_t>(v);
                h *= 1099511628211ull;
            }
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };
    std::vector<GaussianMatrix> letters;
    for (const auto& g : generators()) {
        letters.push_back(g);
        letters.push_back(g.inverse());
    }
    std::unordered_set<MatrixSet::Key, Hash> seen;
    seen.reserve(std::min<std::size_t>(cap, 1u << 21));
    MatrixSet::Key key;
    MatrixSet::make_key(GaussianMatrix::identity(), key);
    seen.insert(key);
    std::vector<GaussianMatrix> frontier = {GaussianMatrix::identity()};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<GaussianMatrix> next;
        for (const auto& m : frontier)
            for (const auto& l : letters) {
                const GaussianMatrix p = m * l;
                if (!MatrixSet::make_key(p, key))
                    throw CapacityError("closure element does not fit the compact storage");
                if (seen.insert(key).second) {
                    if (seen.size() > cap)
                        throw CapacityError("closure exceeds the configured set size");
                    next.push_back(p);
                }
            }
        frontier = std::move(next);
    }
    MatrixSet out;
    out.keys_.assign(seen.begin(), seen.end());
    std::sort(out.keys_.begin(), out.keys_.end());
    return out;
}

bool igusa_membership(const IgusaElement& g)
{
    const i128 det = static_cast<i128>(g.a) * g.d - static_cast<i128>(g.b) * g.c;
    if (det != 1)
        throw DomainError("Igusa membership needs determinant 1");
    return (static_cast<i128>(g.a) * g.b) % 2 == 0 && (static_cast<i128>(g.c) * g.d) % 2 == 0;
}

namespace {

struct Mod2 {
    int a, b, c, d;
};

std::vector<Mod2> sl2_mod2()
{
    std::vector<Mod2> out;
    for (int m = 0; m < 16; ++m) {
        const Mod2 g{m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1};
        if (((g.a * g.d - g.b * g.c) % 2 + 2) % 2 == 1)
            out.push_back(g);
    }
    return out;
}

} // namespace

int igusa_index()
{
    // The Igusa condition only depends on entries mod 2 and SL2(Z) -> SL2(Z/2)
    // is onto, so the index equals |SL2(Z/2)| / |image of the Igusa group|.
    const auto all = sl2_mod2();
    std::size_t image = 0;
    for (const auto& g : all)
        if ((g.a * g.b) % 2 == 0 && (g.c * g.d) % 2 == 0)
            ++image;
    return static_cast<int>(all.size() / image);
}

int igusa_gamma2_index()
{
    const auto all = sl2_mod2();
    std::size_t igusa = 0, level2 = 0;
    for (const auto& g : all) {
        if ((g.a * g.b) % 2 == 0 && (g.c * g.d) % 2 == 0)
            ++igusa;
        if (g.a == 1 && g.b == 0 && g.c == 0 && g.d == 1)
            ++level2;
    }
    return static_cast<int>(igusa / level2);
}

nlohmann::json matrix_to_json(const GaussianMatrix& g)
{
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) {
            const GaussInt e = g.entries()[r][c];
            row.push_back({e.re, e.im});
        }
        rows.push_back(row);
    }
    return {{"phase", g.phase()}, {"entries", rows}};
}

GaussianMatrix matrix_from_json(const nlohmann::json& j)
{
    try {
        if (!j.is_object() || !j.contains("entries"))
            throw ParseError("matrix JSON needs an \"entries\" field");
        int phase = 0;
        if (j.contains("phase")) {
            if (!j.at("phase").is_number_integer())
                throw ParseError("\"phase\" must be an integer");
            phase = j.at("phase").get<int>();
        }
        const auto& rows = j.at("entries");
        if (!rows.is_array() || rows.size() != 4)
            throw ParseError("\"entries\" must be a 4x4 array");
        GaussianMatrix::Entries a;
        for (int r = 0; r < 4; ++r) {
            const auto& row = rows.at(r);
            if (!row.is_array() || row.size() != 4)
                throw ParseError("\"entries\" must be a 4x4 array");
            for (int c = 0; c < 4; ++c) {
                const auto& e = row.at(c);
                if (e.is_number_integer()) {
                    a[r][c] = {e.get<std::int64_t>(), 0};
                } else if (e.is_array() && e.size() == 2 && e.at(0).is_number_integer() &&
                           e.at(1).is_number_integer()) {
                    a[r][c] = {e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>()};
                } else {
                    throw ParseError("matrix entries must be integers or [re, im] integer pairs");
                }
            }
        }
        return GaussianMatrix::from_gaussian(a, phase);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed matrix JSON: ") + e.what());
    }
}

nlohmann::json word_to_json(const Word& w)
{
    nlohmann::json out = nlohmann::json::array();
    for (const Letter& l : w)
        out.push_back({"M" + std::to_string(l.gen), l.power});
    return out;
}

Word word_from_json(const nlohmann::json& j)
{
    if (!j.is_array())
        throw ParseError("word JSON must be an array of [\"Mk\", power] pairs");
    Word w;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e.at(0).is_string() || !e.at(1).is_number_integer())
            throw ParseError("word JSON must be an array of [\"Mk\", power] pairs");
        const std::string name = e.at(0).get<std::string>();
        if (name.size() != 2 || name[0] != 'M' || name[1] < '1' || name[1] > '5')
            throw ParseError("unknown generator " + name);
        w.push_back({name[1] - '0', e.at(1).get<std::int64_t>()});
    }
    return w;
}

} // namespace schwarzf2
