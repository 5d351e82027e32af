#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "sldi/model_io.hpp"
#include "sldi/pteg.hpp"
#include "support.hpp"

using namespace sldi;
using namespace testing;

using QSet = CycleTimeSet<Rational>;
using QNet = PtegNet<Rational>;

namespace {

QNet two_station_net(std::int64_t alpha, std::int64_t beta) {
    return QNet{{"t1", "t2"},
                {{"t1", "t2", 0, q(0), top}, {"t1", "t1", 1, q(alpha), q(alpha)}, {"t2", "t2", 1, q(beta), q(beta)}}};
}

std::vector<Vector<Rational>> periodic(const Vector<Rational>& x0, const Q& lambda, std::size_t K) {
    std::vector<Vector<Rational>> out;
    for (std::size_t k = 0; k <= K; ++k) {
        Vector<Rational> x = x0;
        for (auto& v : x) v = otimes(v, Q(lambda.value() * Rational(static_cast<std::int64_t>(k))));
        out.push_back(std::move(x));
    }
    return out;
}

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("compile reproduces the two-station characteristic matrices") {
    const auto g = compile(two_station_net(1, 1));
    CHECK(g.A1 == QM{{q(1), eps}, {eps, q(1)}});
    CHECK(g.B1 == QM{{q(1), top}, {top, q(1)}});
    CHECK(g.A0 == QM{{eps, eps}, {q(0), eps}});
    CHECK(g.B0 == QM::top(2));
    for (auto [a, b] : {std::pair{2, 1}, std::pair{1, 2}, std::pair{1, 1}}) {
        CHECK(compile(two_station_net(a, b)) == two_station(a, b));
    }
}

TEST_CASE("compile of a net without places is unconstrained") {
    const auto g = compile(QNet{{"t"}, {}});
    CHECK(g == Pteg<Rational>::free(1));
}

TEST_CASE("parallel places keep the tightest window") {
    QNet net{{"u", "w"}, {{"u", "w", 0, q(2), q(10)}, {"u", "w", 0, q(4), top}, {"u", "w", 1, q(1), q(3)}}};
    const auto g = compile(net);
    CHECK(g.A0(1, 0) == q(4));
    CHECK(g.B0(1, 0) == q(10));
    CHECK(g.A1(1, 0) == q(1));
    CHECK(g.B1(1, 0) == q(3));

    net.places.push_back({"u", "w", 0, q(11), q(12)});
    CHECK(code_of([&] { compile(net); }) == Errc::inconsistent_parallel_places);
}

TEST_CASE("compile validates places") {
    CHECK(code_of([] { compile(QNet{{"a"}, {{"a", "b", 0, q(0), top}}}); }) == Errc::validation_error);
    CHECK(code_of([] { compile(QNet{{"a"}, {{"a", "a", 2, q(0), top}}}); }) == Errc::validation_error);
    CHECK(code_of([] { compile(QNet{{"a"}, {{"a", "a", 1, q(-1), top}}}); }) == Errc::validation_error);
    CHECK(code_of([] { compile(QNet{{"a"}, {{"a", "a", 1, top, top}}}); }) == Errc::validation_error);
    CHECK(code_of([] { compile(QNet{{"a"}, {{"a", "a", 1, q(5), q(4)}}}); }) == Errc::validation_error);
}

TEST_CASE("compile commutes with relabelling transitions") {
    Rng rng(8);
    for (int k = 0; k < 30; ++k) {
        const std::size_t n = 4;
        std::vector<std::string> names{"p", "q", "r", "s"};
        QNet net{names, {}};
        for (int p = 0; p < 6; ++p) {
            const auto lo = rng.uniform(0, 5);
            net.places.push_back({rng.pick(names), rng.pick(names), static_cast<int>(rng.uniform(0, 1)), q(lo),
                                  rng.chance(0.5) ? top : q(lo + rng.uniform(0, 5))});
        }
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), std::mt19937(static_cast<unsigned>(k)));
        std::vector<std::string> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = names[perm[i]];

        Pteg<Rational> g, h;
        try {
            g = compile(net);
            h = compile(net, order);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::inconsistent_parallel_places);
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(h.A0(i, j) == g.A0(perm[i], perm[j]));
                CHECK(h.A1(i, j) == g.A1(perm[i], perm[j]));
                CHECK(h.B0(i, j) == g.B0(perm[i], perm[j]));
                CHECK(h.B1(i, j) == g.B1(perm[i], perm[j]));
            }
        }
    }
}

TEST_CASE("cycle-time sets of the two-station modes") {
    CHECK(cycle_time_set(two_station(2, 1)).is_empty());
    CHECK(cycle_time_set(two_station(1, 2)).is_empty());
    CHECK(cycle_time_set(two_station(1, 1)) == QSet::interval(q(1), q(1)));
    CHECK(cycle_time_set(two_station<double>(1, 1)) ==
          CycleTimeSet<double>::interval(Tropical<double>(1.0), Tropical<double>(1.0)));
}

TEST_CASE("cycle-time set is clamped at zero") {
    // a lone transition with no places can fire at any rate
    CHECK(cycle_time_set(Pteg<Rational>::free(1)) == QSet::interval(q(0), top));
}

TEST_CASE("Pteg validation") {
    auto g = two_station(1, 1);
    g.A0(0, 0) = top;
    CHECK(code_of([&] { g.validate(); }) == Errc::validation_error);
    g = two_station(1, 1);
    g.B1(0, 0) = q(0);
    CHECK(code_of([&] { g.validate(); }) == Errc::validation_error);
    g = two_station(1, 1);
    g.B0 = QM::top(3);
    CHECK(code_of([&] { g.validate(); }) == Errc::dimension_mismatch);
}

TEST_CASE("checking LDI trajectories") {
    const auto c = two_station(1, 1);
    for (std::int64_t delta : {0, 1, 5}) {
        std::vector<Vector<Rational>> traj;
        for (std::int64_t k = 0; k <= 10; ++k) traj.push_back({q(k), q(k + delta)});
        CHECK(check_ldi_trajectory(c, traj).passed());
    }

    // mode a: each station repeats its own sojourn time, t2 falls behind t1
    const auto a = two_station(2, 1);
    std::vector<Vector<Rational>> drift;
    for (std::int64_t k = 0; k <= 10; ++k) drift.push_back({q(2 * k), q(k)});
    const auto report = check_ldi_trajectory(a, drift);
    REQUIRE_FALSE(report.passed());
    CHECK(report.violation->constraint == Constraint::A0);
    CHECK(report.violation->row == 1);
    CHECK(report.violation->repetition == 1);

    const auto free = Pteg<Rational>::free(2);
    const std::vector<Vector<Rational>> backwards{{q(3), q(3)}, {q(2), q(4)}};
    const auto back = check_ldi_trajectory(free, backwards);
    REQUIRE_FALSE(back.passed());
    CHECK(back.violation->constraint == Constraint::nondecreasing);
    CHECK(back.violation->row == 0);

    const std::vector<Vector<Rational>> ragged{{q(0), q(0)}, {q(1)}};
    CHECK(code_of([&] { check_ldi_trajectory(free, ragged); }) == Errc::dimension_mismatch);
}

TEST_CASE("synthesis") {
    const auto c = two_station(1, 1);
    const auto x0 = synthesize_periodic(c, q(1));
    REQUIRE(x0.size() == 2);
    CHECK(x0[0] <= x0[1]);
    CHECK(check_ldi_trajectory(c, periodic(x0, q(1), 10)).passed());

    const auto free = Pteg<Rational>::free(3);
    for (std::int64_t lambda : {0, 4}) CHECK(synthesize_periodic(free, q(lambda)) == Vector<Rational>(3, q(0)));

    CHECK(code_of([&] { synthesize_periodic(c, q(2)); }) == Errc::infeasible_lambda);
    CHECK(code_of([&] { synthesize_periodic(c, q(-1)); }) == Errc::infeasible_lambda);
    CHECK(code_of([&] { synthesize_periodic(two_station(2, 1), q(1)); }) == Errc::infeasible_lambda);
}

TEST_CASE("the two network P-TEGs") {
    const auto model = load_model<Rational>(model_path("network5.model"));
    const auto& a = model.base_mode("a");
    const auto& b = model.base_mode("b");
    CHECK(a.size() == 12);
    CHECK(cycle_time_set(a) == QSet::interval(q(73), top));
    CHECK(cycle_time_set(b) == QSet::interval(q(72), q(192)));

    for (std::int64_t lambda : {72, 100, 192}) {
        const auto x0 = synthesize_periodic(b, q(lambda));
        CHECK(check_ldi_trajectory(b, periodic(x0, q(lambda), 20)).passed());
    }
    CHECK_FALSE(admits(pic_of(b), q(71)));
    CHECK_FALSE(admits(pic_of(b), q(193)));
    CHECK_FALSE(admits(pic_of(a), q(72)));
}

TEST_CASE("bounded consistency is equivalent to a checkable periodic witness") {
    Rng rng(31337);
    int nonempty = 0, empty = 0;
    for (int k = 0; k < 300; ++k) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
        const auto g = random_pteg(rng, n, rng.pick(std::vector<double>{0.2, 0.4}));
        const auto s = cycle_time_set(g);
        if (s.is_empty()) {
            ++empty;
            for (std::int64_t lambda = 0; lambda <= 12; ++lambda) CHECK_FALSE(admits(pic_of(g), q(lambda)));
            continue;
        }
        ++nonempty;
        std::vector<Q> probes{s.lo()};
        if (s.hi().is_finite()) {
            probes.push_back(s.hi());
            probes.push_back(Q((s.lo().value() + s.hi().value()) / Rational(2)));
        } else {
            probes.push_back(otimes(s.lo(), q(3)));
        }
        for (const auto& lambda : probes) {
            const auto x0 = synthesize_periodic(g, lambda);
            CHECK(check_ldi_trajectory(g, periodic(x0, lambda, 20)).passed());
        }
        if (s.hi().is_finite()) {
            CHECK(code_of([&] { synthesize_periodic(g, otimes(s.hi(), q(1))); }) == Errc::infeasible_lambda);
        }
        if (q(1) <= s.lo()) {
            CHECK(code_of([&] { synthesize_periodic(g, otimes(s.lo(), q(-1))); }) == Errc::infeasible_lambda);
        }
    }
    CHECK(nonempty > 30);
    CHECK(empty > 30);
}
