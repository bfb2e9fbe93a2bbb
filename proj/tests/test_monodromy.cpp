#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "schwarzf2/monodromy.hpp"

using namespace schwarzf2;

namespace {

const GaussianMatrix& M(int k) { return generators()[k - 1]; }

GaussianMatrix E4() { return GaussianMatrix::identity(); }

Word random_word(std::mt19937_64& rng, int max_len)
{
    std::uniform_int_distribution<int> len(0, max_len), gen(1, 5), sign(0, 1);
    Word w;
    const int n = len(rng);
    for (int k = 0; k < n; ++k)
        w.push_back({gen(rng), sign(rng) ? 1 : -1});
    return w;
}

} // namespace

TEST_CASE("generators as printed")
{
    const auto& m1 = M(1);
    CHECK(m1.phase() == 1);
    CHECK(m1.value(0, 1) == GaussInt{0, 1});
    CHECK(m1.value(2, 0) == GaussInt{0, -1});
    CHECK(m1.value(3, 2) == GaussInt{0, -1});
    CHECK(M(2).value(2, 3) == GaussInt{0, -1});

    const GaussianMatrix m3 = GaussianMatrix::from_integer({{{1, 2, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}});
    CHECK(M(3) == m3);
    CHECK(M(4).value(2, 1) == GaussInt{-1, 0});
    CHECK(M(5).value(0, 0) == GaussInt{2, 0});

    CHECK(M(1) * M(1) == E4());
    CHECK(M(2) * M(2) == E4());
    CHECK(M(1) * M(2) == M(2) * M(1));
    CHECK(M(1) * M(2) != E4());
}

TEST_CASE("canonical form and arithmetic")
{
    const GaussianMatrix g = M(1) * M(3);
    CHECK(g.phase() == 1);
    CHECK(g.real_form());
    CHECK(g * g.inverse() == E4());
    CHECK(M(4).pow(-3) * M(4).pow(3) == E4());
    CHECK(-(-g) == g);
    CHECK(g.scaled_by_i(4) == g);
    CHECK(M(5).pow(0) == E4());

    GaussianMatrix::Entries mixed{};
    for (int k = 0; k < 4; ++k)
        mixed[k][k] = {1, 0};
    mixed[0][1] = {1, 1};
    const GaussianMatrix h = GaussianMatrix::from_gaussian(mixed);
    CHECK_FALSE(h.real_form());
    CHECK(h * h.inverse() == E4());

    GaussianMatrix::IntEntries big{};
    for (int k = 0; k < 4; ++k)
        big[k][k] = 1;
    big[0][1] = std::int64_t(1) << 40;
    const GaussianMatrix b = GaussianMatrix::from_integer(big);
    CHECK_THROWS_AS(b.pow(1 << 24), OverflowError);

    GaussianMatrix::IntEntries singular{};
    singular[0][0] = 2;
    singular[1][1] = singular[2][2] = singular[3][3] = 1;
    CHECK_THROWS_AS(GaussianMatrix::from_integer(singular).inverse(), DomainError);
}

TEST_CASE("membership")
{
    for (int k = 1; k <= 5; ++k) {
        CHECK(is_in_M(M(k)).member);
        CHECK(is_in_M(M(k).inverse()).member);
    }
    const MembershipWitness id = is_in_M(E4());
    CHECK(id.member);
    CHECK(id.n1 == 0);
    CHECK(id.n2 == 0);
    CHECK(id.L[0][0] == 0);
    CHECK(id.L[1][1] == 0);
    CHECK_FALSE(is_in_M(-E4()).member);
    CHECK_FALSE(is_in_M(E4().scaled_by_i(1)).member);

    const MembershipWitness w1 = is_in_M(M(1));
    CHECK(w1.n1 == 1);
    CHECK(w1.n2 == 0);
    const MembershipWitness w2 = is_in_M(M(2));
    CHECK(w2.n1 == 0);
    CHECK(w2.n2 == 1);
    const MembershipWitness w12 = is_in_M(M(1) * M(2));
    CHECK(w12.n1 == 1);
    CHECK(w12.n2 == 1);

    // [[1,1],[0,1]] in the (1,1)-block is outside the Igusa group.
    const GaussianMatrix t = GaussianMatrix::from_integer({{{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}});
    CHECK_FALSE(is_in_M(t).member);
    // An odd row sum in L with n1 = 0.
    const GaussianMatrix odd = GaussianMatrix::from_integer({{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}}});
    CHECK_FALSE(is_in_M(odd).member);
}

TEST_CASE("unipotent products")
{
    const GaussianMatrix h1 = M(4) * M(5).inverse();
    const MembershipWitness w = is_in_M(h1);
    REQUIRE(w.member);
    CHECK(w.L[0][0] == -1);
    CHECK(w.L[0][1] == -1);
    CHECK(w.L[1][0] == 0);
    CHECK(w.L[1][1] == 0);
    CHECK(w.G[0][0] == 1);
    CHECK(w.G[0][1] == 0);
    CHECK(M(4).pow(7) * M(5).pow(-7) == h1.pow(7));

    // H2 = -(M3 M5)^2 M1 M2 carries the block [[0,-1],[-1,0]]. Its row sums are
    // odd while n1 = 0, so H2 lies only in the group extended by -E4.
    const GaussianMatrix s = M(3) * M(5);
    const GaussianMatrix h2 = -(s * s * M(1) * M(2));
    CHECK(h2.value(2, 0) == GaussInt{0, 0});
    CHECK(h2.value(2, 1) == GaussInt{-1, 0});
    CHECK(h2.value(3, 0) == GaussInt{-1, 0});
    CHECK(h2.value(3, 1) == GaussInt{0, 0});
    CHECK_FALSE(is_in_M(h2).member);
    CHECK_THROWS_AS(decompose(h2), NotMember);
    const SignedWord sw = decompose_signed(h2);
    CHECK(sw.sign == -1);
    CHECK(-evaluate(sw.word) == h2);
}

TEST_CASE("decompose round trips")
{
    const GaussianMatrix g = M(3) * M(4) * M(1);
    const Word w = decompose(g);
    CHECK(evaluate(w) == g);
    CHECK(decompose(E4()).empty());
    CHECK_THROWS_AS(decompose(-E4()), NotMember);

    std::mt19937_64 rng(20240611);
    int done = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Word src = random_word(rng, 20);
        const GaussianMatrix m = evaluate(src);
        REQUIRE(is_in_M(m).member);
        const Word out = decompose(m);
        CHECK(evaluate(out) == m);
        ++done;
    }
    CHECK(done == 200);

    const SignedWord sw = decompose_signed(-(M(4) * M(3)));
    CHECK(sw.sign == -1);
    CHECK(evaluate(sw.word) == M(4) * M(3));
    CHECK_THROWS_AS(decompose_signed(E4().scaled_by_i(1)), NotMember);
}

TEST_CASE("words")
{
    const Word w = {{3, 2}, {3, -2}, {1, 3}, {1, 1}, {4, 1}};
    CHECK(simplify(w) == Word{{4, 1}});
    CHECK(evaluate(simplify(w)) == evaluate(w));
    CHECK(word_to_string({{3, 2}, {5, -1}}) == "M3^2 M5^-1");
    CHECK(word_to_string({}) == "E4");
    CHECK_THROWS_AS(evaluate({{6, 1}}), DomainError);
}

TEST_CASE("closure")
{
    const MatrixSet one = bfs_closure(1);
    CHECK(one.size() == 9);
    CHECK(one.contains(E4()));
    CHECK(one.contains(M(5).inverse()));
    CHECK_FALSE(one.contains(M(3) * M(3)));
    CHECK(bfs_closure(0).size() == 1);
    // Layer sizes from an independent floating-point enumeration (numpy).
    CHECK(bfs_closure(2).size() == 60);
    CHECK(bfs_closure(3).size() == 356);
    CHECK_THROWS_AS(bfs_closure(11), DomainError);
    CHECK_THROWS_AS(bfs_closure(4, 50), CapacityError);

    const MatrixSet four = bfs_closure(4);
    CHECK(four.size() == 1970);
    bool closed = true, unit_det = true;
    for (std::size_t k = 0; k < four.size(); ++k) {
        const GaussianMatrix g = four[k];
        const GaussInt d = g.det_entries();
        unit_det = unit_det && (std::abs(d.re) + std::abs(d.im) == 1);
        for (int j = 1; j <= 5; ++j) {
            closed = closed && is_in_M(g * M(j)).member;
            closed = closed && is_in_M(g * M(j).inverse()).member;
        }
    }
    CHECK(closed);
    CHECK(unit_det);
}

TEST_CASE("parity map is a homomorphism")
{
    const MatrixSet six = bfs_closure(6);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, six.size() - 1);
    int good = 0;
    for (int k = 0; k < 1000; ++k) {
        const GaussianMatrix a = six[pick(rng)], b = six[pick(rng)];
        const MembershipWitness wa = is_in_M(a), wb = is_in_M(b), wab = is_in_M(a * b);
        if (wa.member && wb.member && wab.member && wab.n1 == (wa.n1 + wb.n1) % 2 &&
            wab.n2 == (wa.n2 + wb.n2) % 2)
            ++good;
    }
    CHECK(good == 1000);
}

TEST_CASE("Igusa group")
{
    CHECK(igusa_membership({1, 2, 0, 1}));
    CHECK(igusa_membership({0, -1, 1, 0}));
    CHECK_FALSE(igusa_membership({1, 1, 0, 1}));
    CHECK_THROWS_AS(igusa_membership({2, 0, 0, 1}), DomainError);
    CHECK(igusa_index() == 3);
    CHECK(igusa_gamma2_index() == 2);
}

TEST_CASE("JSON round trip")
{
    const GaussianMatrix g = M(1) * M(4);
    CHECK(matrix_from_json(matrix_to_json(g)) == g);
    const auto j = nlohmann::json::parse(R"({"entries": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,[1,0]]]})");
    CHECK(matrix_from_json(j) == E4());
    const auto imag = nlohmann::json::parse(
        R"({"entries": [[[0,1],0,0,0],[0,[0,1],0,0],[0,0,[0,1],0],[0,0,0,[0,1]]]})");
    CHECK(matrix_from_json(imag) == E4().scaled_by_i(1));

    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[1,2]")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"entries": [[1,0]]})")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"entries": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,"x"]]})")),
                    ParseError);

    const Word w = {{3, -2}, {1, 1}};
    CHECK(word_from_json(word_to_json(w)) == w);
    CHECK_THROWS_AS(word_from_json(nlohmann::json::parse(R"([["M7", 1]])")), ParseError);
}
