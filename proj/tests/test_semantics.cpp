#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cpn/semantics.hpp"
#include "cpn/syntax.hpp"
#include "support/random_formula.hpp"

using namespace cpn;

namespace {

template <typename Fn>
bool throws_code(Errc code, Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

Valuation random_valuation(const Store& store, FormulaId f, int n, std::mt19937& rng) {
    Valuation v;
    v.n = n;
    for (const auto& name : store.atoms(f)) {
        std::vector<bool> row;
        for (int i = 0; i < n; ++i) row.push_back(rng() & 1);
        v.assign[name] = row;
    }
    return v;
}

}  // namespace

TEST_CASE("eval: falsum is false exactly inside its chain", "[semantics]") {
    Store st;
    Valuation v{2, {}};
    FormulaId f = parse(st, "bot{1}", 2);
    CHECK(eval(st, f, v) == std::vector<bool>{false, true});
    CHECK(eval(st, parse(st, "bot", 2), v) == std::vector<bool>{false, false});
    CHECK(eval(st, parse(st, "top", 2), v) == std::vector<bool>{true, true});
    Valuation v3{3, {}};
    CHECK(eval(st, parse(st, "bot{1,3}", 3), v3) == std::vector<bool>{false, true, false});
}

TEST_CASE("eval: negation flips inside its chain, passes through outside", "[semantics]") {
    Store st;
    FormulaId f = parse(st, "~{1} p", 2);
    CHECK(eval(st, f, Valuation{2, {{"p", {true, true}}}}) == std::vector<bool>{false, true});
    CHECK(eval(st, f, Valuation{2, {{"p", {false, false}}}}) == std::vector<bool>{true, false});
    FormulaId g = parse(st, "~ p", 2);
    CHECK(eval(st, g, Valuation{2, {{"p", {true, false}}}}) == std::vector<bool>{false, true});
}

TEST_CASE("eval: weak contradiction truth table", "[semantics]") {
    Store st;
    FormulaId f = parse(st, "p & ~{1} p", 2);
    // world 1 behaves classically contradictory, world 2 copies p
    CHECK_FALSE(eval_world(st, f, 1, Valuation{2, {{"p", {true, false}}}}));
    CHECK_FALSE(eval_world(st, f, 1, Valuation{2, {{"p", {false, false}}}}));
    CHECK(eval_world(st, f, 2, Valuation{2, {{"p", {false, true}}}}));
    CHECK_FALSE(eval_world(st, f, 2, Valuation{2, {{"p", {false, false}}}}));
}

TEST_CASE("eval: connectives are classical per world", "[semantics]") {
    Store st;
    Valuation v{2, {{"p", {true, false}}, {"q", {false, false}}}};
    CHECK(eval(st, parse(st, "p -> q", 2), v) == std::vector<bool>{false, true});
    CHECK(eval(st, parse(st, "p | q", 2), v) == std::vector<bool>{true, false});
    CHECK(eval(st, parse(st, "p & q", 2), v) == std::vector<bool>{false, false});
    CHECK(eval(st, parse(st, "p <-> q", 2), v) == std::vector<bool>{false, true});
}

TEST_CASE("eval: sugar evaluates like its expansion", "[semantics]") {
    Store st;
    std::mt19937 rng(77);
    cpn::testing::RandomFormula gen(st, 3, 1234);
    for (int t = 0; t < 200; ++t) {
        FormulaId f = gen.gen(3);
        FormulaId e = st.expand(f);
        Valuation v = random_valuation(st, f, 3, rng);
        CHECK(eval(st, f, v) == eval(st, e, v));
    }
}

TEST_CASE("eval: double negation laws", "[semantics]") {
    Store st;
    std::mt19937 rng(78);
    cpn::testing::RandomFormula gen(st, 3, 4321);
    for (int t = 0; t < 200; ++t) {
        FormulaId f = gen.gen(2);
        Chain c = gen.random_chain();
        Valuation v = random_valuation(st, f, 3, rng);
        FormulaId ff = st.expand(f);
        if (!c.is_empty()) {
            CHECK(eval(st, st.make_neg(c, st.make_neg(c, ff)), v) == eval(st, ff, v));
            FormulaId strong_of = st.make_neg(Chain::full(3), st.make_neg(c, ff));
            FormulaId comp = complement(c).is_empty() ? ff : st.make_neg(complement(c), ff);
            CHECK(eval(st, strong_of, v) == eval(st, comp, v));
        }
    }
}

TEST_CASE("eval errors", "[semantics]") {
    Store st;
    FormulaId f = parse(st, "p", 2);
    Valuation v{2, {{"p", {true, true}}}};
    CHECK(throws_code(Errc::world_out_of_range, [&] { eval_world(st, f, 3, v); }));
    CHECK(throws_code(Errc::world_out_of_range, [&] { eval_world(st, f, 0, v); }));
    CHECK(throws_code(Errc::unassigned_atom, [&] { eval_world(st, parse(st, "q", 2), 1, v); }));
    CHECK(throws_code(Errc::alphabet_mismatch,
                      [&] { eval_world(st, parse(st, "bot{3}", 3), 1, v); }));
}

TEST_CASE("classify: spec'd verdicts", "[semantics]") {
    Store st;
    CHECK(classify(st, parse(st, "p | ~ p", 2), 2).kind == VerdictKind::Tautology);
    CHECK(classify(st, parse(st, "p -> p", 3), 3).kind == VerdictKind::Tautology);
    CHECK(classify(st, parse(st, "p | ~{1} p", 2), 2).kind == VerdictKind::Neither);
    CHECK(classify(st, parse(st, "bot", 2), 2).kind == VerdictKind::Contradiction);
    CHECK(classify(st, parse(st, "p & ~ p", 1), 1).kind == VerdictKind::Contradiction);
    CHECK(classify(st, parse(st, "bot{1}", 2), 2).kind == VerdictKind::Neither);
    CHECK(classify(st, parse(st, "top", 4), 4).kind == VerdictKind::Tautology);
}

TEST_CASE("classify: witness shape per verdict", "[semantics]") {
    Store st;

    Verdict t = classify(st, parse(st, "p | ~ p", 2), 2);
    CHECK_FALSE(t.witness_false.has_value());

    Verdict c = classify(st, parse(st, "p & ~ p", 2), 2);
    REQUIRE(c.witness_false.has_value());
    for (const auto& [name, row] : c.witness_false->assign)
        for (bool b : row) CHECK_FALSE(b);
    CHECK_FALSE(c.witness_true.has_value());

    Verdict n = classify(st, parse(st, "p | ~{1} p", 2), 2);
    REQUIRE(n.witness_false.has_value());
    REQUIRE(n.witness_true.has_value());
    // spec example: the first falsifying valuation sets p false at world 2
    CHECK(n.witness_false->assign.at("p") == std::vector<bool>{false, false});
    Chain cls = contingency_class(st, parse(st, "p | ~{1} p", 2), *n.witness_false);
    CHECK_FALSE(cls.is_empty());
}

TEST_CASE("find_countermodel: frozen examples", "[semantics]") {
    Store st;

    auto cm = find_countermodel(st, parse(st, "(p & ~{1} p) -> q", 2), 2);
    REQUIRE(cm.has_value());
    CHECK(cm->world == 2);
    CHECK(cm->valuation.assign.at("p") == std::vector<bool>{false, true});
    CHECK(cm->valuation.assign.at("q") == std::vector<bool>{false, false});

    CHECK_FALSE(find_countermodel(st, parse(st, "p | ~ p", 2), 2).has_value());

    auto cm2 = find_countermodel(st, parse(st, "p | ~{1} p", 2), 2);
    REQUIRE(cm2.has_value());
    CHECK(cm2->world == 2);
    CHECK(cm2->valuation.assign.at("p") == std::vector<bool>{false, false});
}

TEST_CASE("find_countermodel: result actually falsifies its world", "[semantics]") {
    Store st;
    cpn::testing::RandomFormula gen(st, 2, 999);
    for (int t = 0; t < 300; ++t) {
        FormulaId f = gen.gen(3);
        auto cm = find_countermodel(st, f, 2);
        if (cm) {
            CHECK_FALSE(eval_world(st, f, cm->world, cm->valuation));
        } else {
            CHECK(classify(st, f, 2).kind == VerdictKind::Tautology);
        }
    }
}

TEST_CASE("contingency_class lists exactly the false worlds", "[semantics]") {
    Store st;
    Valuation v{3, {{"p", {true, false, true}}}};
    CHECK(contingency_class(st, parse(st, "p", 3), v) == Chain::canonical({2}, 3));
    CHECK(contingency_class(st, parse(st, "bot{1,3}", 3), v) == Chain::canonical({1, 3}, 3));
    CHECK(contingency_class(st, parse(st, "p -> p", 3), v).is_empty());
    CHECK(contingency_class(st, parse(st, "bot", 3), v).is_full());
}

TEST_CASE("entails: weak negation is paraconsistent", "[semantics]") {
    Store st;
    std::vector<FormulaId> sigma = {parse(st, "p", 2), parse(st, "~{1} p", 2)};
    EntailResult r = entails(st, sigma, parse(st, "q", 2), 2);
    CHECK_FALSE(r.holds);
    REQUIRE(r.countermodel.has_value());
    CHECK(r.countermodel->world == 2);
    const Valuation& v = r.countermodel->valuation;
    CHECK(eval_world(st, sigma[0], 2, v));
    CHECK(eval_world(st, sigma[1], 2, v));
    CHECK_FALSE(eval_world(st, parse(st, "q", 2), 2, v));
}

TEST_CASE("entails: positive cases", "[semantics]") {
    Store st;
    CHECK(entails(st, {parse(st, "p", 2), parse(st, "p -> q", 2)}, parse(st, "q", 2), 2).holds);
    CHECK(entails(st, {}, parse(st, "p | ~ p", 2), 2).holds);
    CHECK(entails(st, {parse(st, "p & q", 3)}, parse(st, "q", 3), 3).holds);
    // strong negation pair still explodes
    CHECK(entails(st, {parse(st, "p", 2), parse(st, "~ p", 2)}, parse(st, "q", 2), 2).holds);
}

TEST_CASE("entails: countermodel honors the enumeration order", "[semantics]") {
    Store st;
    EntailResult r = entails(st, {parse(st, "q", 2)}, parse(st, "p | ~{1} p", 2), 2);
    CHECK_FALSE(r.holds);
    REQUIRE(r.countermodel.has_value());
    CHECK(r.countermodel->world == 2);
    CHECK(r.countermodel->valuation.assign.at("q") == std::vector<bool>{false, true});
    CHECK(r.countermodel->valuation.assign.at("p") == std::vector<bool>{false, false});
}

TEST_CASE("classify agrees with the product oracle", "[semantics]") {
    Store st;
    cpn::testing::RandomFormula gen(st, 2, 31337);
    for (int t = 0; t < 400; ++t) {
        FormulaId f = gen.gen(3);
        Verdict fast = classify(st, f, 2);
        Verdict slow = classify_product(st, f, 2);
        REQUIRE(fast.kind == slow.kind);
        CHECK(fast.witness_false == slow.witness_false);
        CHECK(fast.witness_true == slow.witness_true);
    }
}

TEST_CASE("classify: sweep bound", "[semantics]") {
    Store st;
    FormulaId f = st.make_atom("a0");
    for (int i = 1; i < 17; ++i) f = st.make_imp(f, st.make_atom("a" + std::to_string(i)));
    CHECK(throws_code(Errc::bound_exceeded, [&] { classify(st, f, 2); }));
    CHECK(throws_code(Errc::bound_exceeded, [&] { find_countermodel(st, f, 2); }));
}

TEST_CASE("hierarchy_check holds on random two-world formulas", "[semantics]") {
    Store st;
    cpn::testing::RandomFormula gen(st, 2, 2024);
    for (int t = 0; t < 300; ++t) CHECK(hierarchy_check(st, gen.gen(3), 2));
}

TEST_CASE("hierarchy_check: widening breaks chain-bound tautologies upward", "[semantics]") {
    Store st;
    // tautology over [1] whose widened form fails at the fresh world
    FormulaId f = parse(st, "bot{1} -> q", 1);
    CHECK(classify(st, f, 1).kind == VerdictKind::Tautology);
    FormulaId wide = st.widen_alphabet(st.expand(f), 2);
    CHECK(classify(st, wide, 2).kind != VerdictKind::Tautology);
    CHECK(hierarchy_check(st, f, 1));
}

TEST_CASE("valuation accessor errors", "[semantics]") {
    Valuation v{2, {{"p", {true}}}};
    CHECK(throws_code(Errc::world_out_of_range, [&] { v.value("p", 3); }));
    CHECK(throws_code(Errc::unassigned_atom, [&] { v.value("q", 1); }));
    CHECK(throws_code(Errc::unassigned_atom, [&] { v.value("p", 2); }));
    CHECK(v.value("p", 1));
}
