#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "jacquet.hpp"
#include "jordan.hpp"

using namespace tempera;
using tempera::test::make_world;

namespace {

AdmissibleTriple two_pairs(const test::World& w) {
    AdmissibleTriple t = base_triple(w.tab, w.c0);
    t = add_pair(w.tab, t, w.rho, 1, 3, +1);
    t = add_pair(w.tab, t, w.rho, 5, 7, -1);
    return t;
}

}  // namespace

TEST_CASE("base triple carries the cuspidal blocks with alternating signs") {
    auto w = make_world();
    AdmissibleTriple t0 = base_triple(w.tab, w.c0);
    CHECK(t0.jord.blocks.empty());
    CHECK(t0.eps.val.empty());

    AdmissibleTriple t1 = base_triple(w.tab, w.c1);
    CHECK(t1.jord.line(w.rhoc) == std::set<std::int64_t>{1, 3});
    // only the reducibility exponent (1+3)/2 = 2 may reduce
    CHECK(point_reduces(w.tab, t1, w.rhoc, HalfInt::whole(2)) == Reducibility::Reduces);
    CHECK(point_reduces(w.tab, t1, w.rhoc, HalfInt::whole(1)) == Reducibility::Irreducible);
    CHECK(point_reduces(w.tab, t1, w.rhoc, HalfInt::whole(0)) == Reducibility::Irreducible);
    CHECK(validate_triple(w.tab, t1).empty());
}

TEST_CASE("delta_b_reduces is the D^u_red membership test") {
    auto w = make_world();
    AdmissibleTriple t = base_triple(w.tab, w.c0);
    t = add_pair(w.tab, t, w.rho, 1, 5, +1);
    CHECK(delta_b_reduces(w.tab, t, w.rho, 3));
    CHECK_FALSE(delta_b_reduces(w.tab, t, w.rho, 5));
    CHECK_FALSE(delta_b_reduces(w.tab, t, w.rho, 2));  // wrong parity
    CHECK_FALSE(delta_b_reduces(w.tab, t, w.mu, 3));   // not selfdual
}

TEST_CASE("point_reduces covers the whole case table") {
    auto w = make_world();

    AdmissibleTriple t0 = base_triple(w.tab, w.c0);  // empty line, odd parity
    // (iii) at alpha = 0
    CHECK(point_reduces(w.tab, t0, w.rho, HalfInt(0)) == Reducibility::Reduces);
    // (ii) non-selfdual
    CHECK(point_reduces(w.tab, t0, w.mu, HalfInt(0)) == Reducibility::Irreducible);
    // (iv) a = 1 not in the line
    CHECK(point_reduces(w.tab, t0, w.rho, HalfInt::whole(1)) == Reducibility::Irreducible);

    AdmissibleTriple t1 = base_triple(w.tab, w.c0);
    t1 = add_pair(w.tab, t1, w.rho, 1, 3, +1);
    // (iii): 1 in the line
    CHECK(point_reduces(w.tab, t1, w.rho, HalfInt(0)) == Reducibility::Irreducible);
    // (vi): 1,3 both present with product +1
    CHECK(point_reduces(w.tab, t1, w.rho, HalfInt::whole(1)) == Reducibility::Reduces);
    // (v): 3 present, 5 absent
    CHECK(point_reduces(w.tab, t1, w.rho, HalfInt::whole(2)) == Reducibility::Reduces);
    // (i): symmetry
    for (std::int64_t tw = -6; tw <= 6; ++tw)
        CHECK(point_reduces(w.tab, t1, w.rho, HalfInt(tw)) ==
              point_reduces(w.tab, t1, w.rho, HalfInt(-tw)));

    // Jord = {1}: nu rho |x pi reduces by (v)
    AdmissibleTriple t2 = base_triple(w.tab, w.c0);
    t2 = add_pair(w.tab, t2, w.rho, 1, 3, +1);
    t2 = deform_up(w.tab, t2, w.rho, 3, 5);
    t2 = remove_pair(w.tab, t2, w.rho, 1, 5);
    CHECK(t2.jord.blocks.empty());

    // (vii) on the even line
    AdmissibleTriple te = base_triple(w.tab, w.c0);
    CHECK(point_reduces(w.tab, te, w.rhoe, ONE_HALF) == Reducibility::Reduces);  // 2 absent, (J1) ok
    te = add_pair(w.tab, te, w.rhoe, 2, 4, +1);
    CHECK(point_reduces(w.tab, te, w.rhoe, ONE_HALF) == Reducibility::Reduces);  // eps(2) = +1
    AdmissibleTriple tem = base_triple(w.tab, w.c0);
    tem = add_pair(w.tab, tem, w.rhoe, 2, 4, -1);
    CHECK(point_reduces(w.tab, tem, w.rhoe, ONE_HALF) == Reducibility::Irreducible);
    // (vii) never fires on an odd line without block 2
    CHECK(point_reduces(w.tab, t1, w.rho, ONE_HALF) == Reducibility::Irreducible);
    // (vi) with product -1: {2,4} signs +1,-1
    AdmissibleTriple tv = base_triple(w.tab, w.c0);
    tv = add_pair(w.tab, tv, w.rhoe, 2, 4, +1);
    tv = add_pair(w.tab, tv, w.rhoe, 6, 8, -1);
    CHECK(point_reduces(w.tab, tv, w.rhoe, HalfInt(5)) == Reducibility::Irreducible);  // (4,6): -1
    CHECK(point_reduces(w.tab, tv, w.rhoe, HalfInt(7)) == Reducibility::Reduces);      // (6,8): +1
}

TEST_CASE("segment_irreducible proves only one direction") {
    auto w = make_world();
    AdmissibleTriple t = base_triple(w.tab, w.c0);
    t = add_pair(w.tab, t, w.rho, 1, 3, +1);
    t = deform_up(w.tab, t, w.rho, 3, 5);
    // Jord = {1,5}: exponents 1 and 2 both reduce by (v)/(vi)
    CHECK(segment_irreducible(w.tab, t, Segment{w.rho, HalfInt::whole(1), HalfInt::whole(2)}) ==
          Irreducibility::Unknown);
    // Jord = {1,3,5} with alternating signs: every point of [nu, nu^2] is
    // irreducible by (vi)
    AdmissibleTriple tc;
    tc.cusp = w.c0;
    tc.jord.blocks[w.rho] = {1, 3, 5};
    tc.eps.val[{w.rho, 1}] = +1;
    tc.eps.val[{w.rho, 3}] = -1;
    tc.eps.val[{w.rho, 5}] = +1;
    REQUIRE(validate_triple(w.tab, tc).empty());
    CHECK(segment_irreducible(w.tab, tc, Segment{w.rho, HalfInt::whole(1), HalfInt::whole(2)}) ==
          Irreducibility::Irreducible);
    CHECK(segment_irreducible(w.tab, tc, std::nullopt) == Irreducibility::Irreducible);
    // non-selfdual lines never reduce
    CHECK(segment_irreducible(w.tab, tc, Segment{w.mu, HalfInt(0), HalfInt::whole(3)}) ==
          Irreducibility::Irreducible);
}

TEST_CASE("jord_transfer follows the two Jordan transfer cases") {
    auto w = make_world();
    JordanBlocks jp;
    jp.blocks[w.rho] = {1};
    JordanBlocks out =
        jord_transfer(w.tab, jp, w.rho, HalfInt::whole(2), HalfInt::whole(1));
    CHECK(out.line(w.rho) == std::set<std::int64_t>{5});

    JordanBlocks empty;
    JordanBlocks grown =
        jord_transfer(w.tab, empty, w.rho, HalfInt::whole(2), HalfInt::whole(-1));
    CHECK(grown.line(w.rho) == std::set<std::int64_t>{3, 5});

    CHECK_THROWS_AS((void)jord_transfer(w.tab, empty, w.rho, HalfInt::whole(0), HalfInt::whole(0)),
                    error);
    CHECK_THROWS_AS((void)jord_transfer(w.tab, empty, w.rho, HalfInt(3), HalfInt(1)), error);
    CHECK_THROWS_AS(
        (void)jord_transfer(w.tab, empty, w.rhoe, HalfInt::whole(2), HalfInt::whole(1)), error);
    // y = 1/2 on the even line: nothing removed
    JordanBlocks half = jord_transfer(w.tab, empty, w.rhoe, HalfInt(3), HalfInt(1));
    CHECK(half.line(w.rhoe) == std::set<std::int64_t>{4});

    // growth bookkeeping
    CHECK(grown.line(w.rho).size() == empty.line(w.rho).size() + 2);
    CHECK(out.line(w.rho).size() == jp.line(w.rho).size());
}

TEST_CASE("add_pair records the pair and preserves existing data") {
    auto w = make_world();
    AdmissibleTriple t = base_triple(w.tab, w.c0);
    t = add_pair(w.tab, t, w.rho, 1, 3, +1);
    CHECK(t.jord.line(w.rho) == std::set<std::int64_t>{1, 3});
    CHECK(*eps_singleton(w.tab, t, w.rho, 1) == 1);
    CHECK(*eps_singleton(w.tab, t, w.rho, 3) == 1);
    CHECK(eps_pair(w.tab, t, w.rho, 1, 3) == 1);

    AdmissibleTriple t2 = add_pair(w.tab, t, w.rhoe, 2, 4, -1);
    CHECK(*eps_singleton(w.tab, t2, w.rho, 1) == 1);  // untouched foreign line
    CHECK(*eps_singleton(w.tab, t2, w.rhoe, 2) == -1);

    // relative line (cuspidal blocks present): no absolute sign allowed
    AdmissibleTriple tc = base_triple(w.tab, w.c1);
    CHECK_THROWS_AS((void)add_pair(w.tab, tc, w.rhoc, 5, 7, +1), error);
    AdmissibleTriple tc2 = add_pair(w.tab, tc, w.rhoc, 5, 7, std::nullopt);
    CHECK(eps_pair(w.tab, tc2, w.rhoc, 5, 7) == 1);
    CHECK(eps_pair(w.tab, tc2, w.rhoc, 1, 3) == -1);  // cuspidal alternation preserved
    CHECK(eps_singleton(w.tab, tc2, w.rhoc, 7) == std::nullopt);

    CHECK_THROWS_AS((void)add_pair(w.tab, t, w.rho, 3, 5, +1), error);   // overlap
    CHECK_THROWS_AS((void)add_pair(w.tab, t, w.rho, 5, 7, std::nullopt), error);  // sign needed
    CHECK_THROWS_AS((void)add_pair(w.tab, t, w.rho, 5, 6, +1), error);   // parity
}

TEST_CASE("remove_pair undoes add_pair") {
    auto w = make_world();
    std::mt19937_64 rng(41);
    for (int it = 0; it < 200; ++it) {
        ConstructionChain chain = random_chain(rng, w.tab, it % 2 ? w.c0 : w.c1, GenCaps{9, 3});
        AdmissibleTriple t = replay(w.tab, chain);
        // pick a valid fresh pair
        for (GlId rho : {w.rho, w.rhoe, w.rhoc}) {
            std::int64_t start = w.tab.gl(rho).parity == Parity::Odd ? 1 : 2;
            for (std::int64_t am = start; am <= 7; am += 2) {
                bool clash = false;
                for (std::int64_t b : t.jord.line(rho)) clash = clash || (am <= b && b <= am + 2);
                if (clash) continue;
                std::optional<int> sign;
                if (singletons_defined(w.tab, t, rho)) sign = rng() % 2 ? +1 : -1;
                AdmissibleTriple added = add_pair(w.tab, t, rho, am, am + 2, sign);
                AdmissibleTriple back = remove_pair(w.tab, added, rho, am, am + 2);
                CHECK(back == t);
                break;
            }
        }
    }
    AdmissibleTriple t0 = base_triple(w.tab, w.c0);
    CHECK_THROWS_AS((void)remove_pair(w.tab, t0, w.rho, 1, 3), error);  // empty line
    AdmissibleTriple t = add_pair(w.tab, t0, w.rho, 1, 3, +1);
    t = add_pair(w.tab, t, w.rho, 5, 7, -1);
    CHECK_THROWS_AS((void)remove_pair(w.tab, t, w.rho, 3, 5), error);  // quotient -1
    CHECK_THROWS_AS((void)remove_pair(w.tab, t, w.rho, 1, 7), error);  // not adjacent
}

TEST_CASE("deform_down moves one block and transports epsilon") {
    auto w = make_world();
    AdmissibleTriple t = base_triple(w.tab, w.c0);
    t = add_pair(w.tab, t, w.rho, 1, 3, -1);
    t = deform_up(w.tab, t, w.rho, 3, 5);
    // Jord = {1,5}, eps(5) = -1; deform 5 down to 3
    AdmissibleTriple d = deform_down(w.tab, t, w.rho, 5, 1);
    CHECK(d.jord.line(w.rho) == std::set<std::int64_t>{1, 3});
    CHECK(*eps_singleton(w.tab, d, w.rho, 3) == -1);
    CHECK(eps_pair(w.tab, d, w.rho, 1, 3) == eps_pair(w.tab, t, w.rho, 1, 5));

    CHECK_THROWS_AS((void)deform_down(w.tab, t, w.rho, 5, 2), error);  // gap through 1
    AdmissibleTriple t3 = add_pair(w.tab, base_triple(w.tab, w.c0), w.rho, 1, 3, +1);
    CHECK_THROWS_AS((void)deform_down(w.tab, t3, w.rho, 3, 1), error);  // 1 occupies the target
}

TEST_CASE("deform_up round-trips with deform_down") {
    auto w = make_world();
    AdmissibleTriple t = base_triple(w.tab, w.c0);
    t = add_pair(w.tab, t, w.rho, 1, 3, +1);
    AdmissibleTriple up = deform_up(w.tab, t, w.rho, 3, 7);
    CHECK(up.jord.line(w.rho) == std::set<std::int64_t>{1, 7});
    CHECK(*eps_singleton(w.tab, up, w.rho, 7) == 1);
    CHECK(deform_down(w.tab, up, w.rho, 7, 2) == t);
    CHECK_THROWS_AS((void)deform_up(w.tab, up, w.rho, 1, 7), error);  // target occupied
}

TEST_CASE("validate_triple reports violations as data") {
    auto w = make_world();
    AdmissibleTriple ok = two_pairs(make_world());
    CHECK(validate_triple(w.tab, ok).empty());

    AdmissibleTriple bad = ok;
    bad.eps.val.erase({w.rho, 7});
    auto v1 = validate_triple(w.tab, bad);
    CHECK(!v1.empty());

    AdmissibleTriple stray = ok;
    stray.eps.val[{w.rho, 9}] = 1;
    CHECK(!validate_triple(w.tab, stray).empty());

    AdmissibleTriple parity = ok;
    parity.jord.blocks[w.rho].insert(4);
    CHECK(!validate_triple(w.tab, parity).empty());
}
