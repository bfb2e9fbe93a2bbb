#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "schwarzf2/errors.hpp"

namespace schwarzf2 {

struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussInt& o) const { return !(*this == o); }
    bool is_zero() const { return re == 0 && im == 0; }
};

// Exact 4x4 matrix i^phase * A with Gaussian integer entries A. Values are kept
// in a canonical form: when the whole matrix is a unit times a real integer
// matrix, A is that real matrix and phase is 0 or 1; otherwise phase is 0.
// Every operation checks for int64 overflow and throws OverflowError.
class GaussianMatrix {
public:
    using Entries = std::array<std::array<GaussInt, 4>, 4>;
    using IntEntries = std::array<std::array<std::int64_t, 4>, 4>;

    GaussianMatrix();

    static GaussianMatrix identity() { return GaussianMatrix(); }
    static GaussianMatrix from_integer(const IntEntries& a, int phase = 0);
    static GaussianMatrix from_gaussian(const Entries& a, int phase = 0);

    int phase() const { return phase_; }
    const Entries& entries() const { return a_; }
    // Entry of the full matrix, phase applied.
    GaussInt value(int r, int c) const;

    // True when the stored entries are real integers.
    bool real_form() const;

    GaussianMatrix operator*(const GaussianMatrix& o) const;
    GaussianMatrix operator-() const;
    GaussianMatrix scaled_by_i(int k) const;
    GaussianMatrix inverse() const;
    GaussianMatrix pow(std::int64_t n) const;

    // Determinant of the stored entry matrix A.
    GaussInt det_entries() const;

    bool operator==(const GaussianMatrix& o) const { return phase_ == o.phase_ && a_ == o.a_; }
    bool operator!=(const GaussianMatrix& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void canonicalize();

    Entries a_;
    int phase_ = 0;
};

// M1..M5 exactly as printed; index 0 holds M1.
const std::array<GaussianMatrix, 5>& generators();

struct MembershipWitness {
    bool member = false;
    int n1 = 0, n2 = 0;
    std::array<std::array<std::int64_t, 2>, 2> G{};
    std::array<std::array<std::int64_t, 2>, 2> L{};
    std::string reason;
};

// g = i^{-n1+n2} [[G, 0], [L, J2^{n1+n2}]] with G in the Igusa group and both
// row sums of L congruent to n1 mod 2.
MembershipWitness is_in_M(const GaussianMatrix& g);

// Letter M_gen^power, gen in 1..5. A word is evaluated left to right.
struct Letter {
    int gen = 1;
    std::int64_t power = 1;

    bool operator==(const Letter& o) const { return gen == o.gen && power == o.power; }
};
using Word = std::vector<Letter>;

GaussianMatrix evaluate(const Word& w);
std::string word_to_string(const Word& w);

// Merges adjacent letters with the same generator and drops zero powers;
// M1 and M2 powers are taken mod 2.
Word simplify(const Word& w);

// Word in M1..M5 whose product is g. Throws NotMember unless is_in_M(g).
Word decompose(const GaussianMatrix& g);

struct SignedWord {
    Word word;
    int sign = 1; // g = sign * evaluate(word)
};

// Decomposition in the group generated by M1..M5 and -E4.
SignedWord decompose_signed(const GaussianMatrix& g);

// Set of matrices with a deterministic order.
class MatrixSet {
public:
    std::size_t size() const { return keys_.size(); }
    GaussianMatrix operator[](std::size_t k) const;
    bool contains(const GaussianMatrix& g) const;

private:
    friend MatrixSet bfs_closure(int, std::size_t);
    struct Key {
        std::int8_t phase;
        std::array<std::int32_t, 16> a;
        bool operator==(const Key& o) const { return phase == o.phase && a == o.a; }
        bool operator<(const Key& o) const { return phase != o.phase ? phase < o.phase : a < o.a; }
    };
    static bool make_key(const GaussianMatrix& g, Key& out);
    std::vector<Key> keys_;
};

inline constexpr std::size_t kDefaultClosureCap = 4'000'000;

// All products of at most max_len letters from M1..M5 and their inverses.
// Throws CapacityError once the set would exceed cap, DomainError unless
// 0 <= max_len <= 10.
MatrixSet bfs_closure(int max_len, std::size_t cap = kDefaultClosureCap);

struct IgusaElement {
    std::int64_t a = 1, b = 0, c = 0, d = 1;
};

// g11 g12 and g21 g22 both even. DomainError unless det g = 1.
bool igusa_membership(const IgusaElement& g);

// [SL2(Z) : Igusa group], from the images in SL2(Z/2Z).
int igusa_index();

// [Igusa group : Gamma(2)], from the images in SL2(Z/2Z).
int igusa_gamma2_index();

nlohmann::json matrix_to_json(const GaussianMatrix& g);
// Accepts {"phase": e, "entries": 4x4 array of [re, im]}; "phase" optional.
// Throws ParseError on malformed input.
GaussianMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json word_to_json(const Word& w);
Word word_from_json(const nlohmann::json& j);

} // namespace schwarzf2
