// Builder combinators, the deduction transformer, reductio, and the derived
// rule library.

#include <catch2/catch_amalgamated.hpp>

#include <cpn/derivations.hpp>
#include <cpn/semantics.hpp>
#include <cpn/syntax.hpp>

#include "support/random_proof.hpp"

using namespace cpn;

namespace {

FormulaId core(Store& st, const std::string& text, int n) {
    return st.expand(parse(st, text, n));
}

void require_ok(const Store& st, const Proof& p) {
    CheckResult r = check_proof(st, p);
    INFO(r.message());
    REQUIRE(r.ok);
}

void require_sound(const Store& st, const Proof& p) {
    require_ok(st, p);
    REQUIRE(entails(st, p.premises, p.conclusion(), p.n).holds);
}

template <typename F>
bool throws_code(F&& f, Errc want) {
    try {
        f();
    } catch (const Error& e) {
        return e.code() == want;
    }
    return false;
}

}  // namespace

TEST_CASE("builder appends checkable lines and deduplicates") {
    Store st;
    int n = 2;
    FormulaId p = st.make_atom("p");
    FormulaId q = st.make_atom("q");
    ProofBuilder b(st, n, {p, q});

    int l1 = b.premise(1);
    REQUIRE(l1 == 1);
    REQUIRE(b.premise(1) == 1);  // same premise, same line
    REQUIRE(b.have(p) == 1);
    REQUIRE(b.have(q) == 0);

    FormulaId a1 = st.make_imp(p, st.make_imp(q, p));
    int l2 = b.axiom_instance(1, a1);
    REQUIRE(l2 == 2);
    REQUIRE(b.axiom_instance(1, a1) == 2);

    int l3 = b.mp(l2, l1);
    REQUIRE(b.formula_at(l3) == st.make_imp(q, p));
    REQUIRE(b.mp(l2, l1) == l3);

    require_sound(st, b.build());

    SECTION("rejects a non-instance and a bad MP shape") {
        FormulaId fresh = st.make_imp(q, st.make_imp(p, q));
        REQUIRE(throws_code([&] { b.axiom_instance(2, fresh); }, Errc::invalid_input));
        REQUIRE(throws_code([&] { b.mp(l1, l2); }, Errc::invalid_input));
        REQUIRE(throws_code([&] { b.formula_at(99); }, Errc::invalid_input));
        REQUIRE(throws_code([&] { b.premise(3); }, Errc::invalid_input));
    }

    SECTION("build_to truncates to an interior conclusion") {
        Proof p2 = b.build_to(l2);
        REQUIRE(p2.lines.size() == 2);
        REQUIRE(p2.conclusion() == a1);
        require_ok(st, p2);
        REQUIRE(throws_code([&] { b.build_to(0); }, Errc::invalid_input));
        REQUIRE(throws_code([&] { b.build_to(b.size() + 1); }, Errc::invalid_input));
    }
}

TEST_CASE("identity and weaken and compose and imp_distr") {
    Store st;
    int n = 2;
    FormulaId p = st.make_atom("p");
    FormulaId q = st.make_atom("q");
    FormulaId r = st.make_atom("r");

    SECTION("identity gives the five-line φ→φ") {
        ProofBuilder b(st, n);
        int l = derive::identity(b, p);
        REQUIRE(b.formula_at(l) == st.make_imp(p, p));
        REQUIRE(b.size() == 5);
        require_sound(st, b.build());
        REQUIRE(derive::identity(b, p) == l);  // cached
    }

    SECTION("weaken prefixes a hypothesis") {
        ProofBuilder b(st, n, {p});
        int l = derive::weaken(b, b.premise(1), q);
        REQUIRE(b.formula_at(l) == st.make_imp(q, p));
        require_sound(st, b.build());
    }

    SECTION("compose chains implications") {
        FormulaId pq = st.make_imp(p, q);
        FormulaId qr = st.make_imp(q, r);
        ProofBuilder b(st, n, {pq, qr});
        int l = derive::compose(b, b.premise(1), b.premise(2));
        REQUIRE(b.formula_at(l) == st.make_imp(p, r));
        require_sound(st, b.build());
    }

    SECTION("imp_distr distributes an antecedent") {
        FormulaId pqr = st.make_imp(p, st.make_imp(q, r));
        FormulaId pq = st.make_imp(p, q);
        ProofBuilder b(st, n, {pqr, pq});
        int l = derive::imp_distr(b, b.premise(1), b.premise(2));
        REQUIRE(b.formula_at(l) == st.make_imp(p, r));
        require_sound(st, b.build());
        REQUIRE(throws_code([&] { derive::imp_distr(b, b.premise(2), b.premise(1)); },
                            Errc::invalid_input));
    }
}

TEST_CASE("prune drops unreachable lines") {
    Store st;
    int n = 2;
    FormulaId p = st.make_atom("p");
    FormulaId q = st.make_atom("q");
    ProofBuilder b(st, n, {p, q});
    b.premise(2);  // never used again
    int lp = b.premise(1);
    derive::identity(b, q);  // five dead lines
    int goal = derive::weaken(b, lp, q);

    Proof full = b.build_to(goal);
    Proof slim = prune(full);
    REQUIRE(slim.conclusion() == full.conclusion());
    REQUIRE(slim.lines.size() == 3);  // premise, A1, MP
    REQUIRE(slim.premises == full.premises);
    require_ok(st, slim);
}

TEST_CASE("deduction transform discharges the last premise") {
    Store st;
    int n = 2;
    FormulaId p = st.make_atom("p");

    SECTION("single premise line becomes φ→φ") {
        Proof in;
        in.n = n;
        in.premises = {p};
        in.lines = {ProofLine{1, p, Just::from_premise(1)}};
        Proof out = deduction_transform(st, in);
        REQUIRE(out.premises.empty());
        REQUIRE(out.conclusion() == st.make_imp(p, p));
        require_sound(st, out);
    }

    SECTION("weak negation introduction, discharged twice down to an axiom") {
        Proof in = parse_proof(st,
                               "worlds 2\n"
                               "premise p\n"
                               "premise bot{1}\n"
                               "1. p ; premise 1\n"
                               "2. bot{1} ; premise 2\n"
                               "3. p -> (bot{1} -> ~{1} p) ; axiom A4\n"
                               "4. bot{1} -> ~{1} p ; mp 3 1\n"
                               "5. ~{1} p ; mp 4 2\n");
        require_ok(st, in);

        Proof once = deduction_transform(st, in);
        REQUIRE(once.premises == std::vector<FormulaId>{p});
        REQUIRE(once.conclusion() == core(st, "bot{1} -> ~{1} p", n));
        require_sound(st, once);

        Proof twice = deduction_transform(st, once);
        REQUIRE(twice.premises.empty());
        REQUIRE(twice.conclusion() == core(st, "p -> (bot{1} -> ~{1} p)", n));
        require_sound(st, twice);

        auto m = match_axiom(st, twice.conclusion(), n);
        REQUIRE(m);
        REQUIRE(m->id == 4);
    }

    SECTION("premise-free input is rejected") {
        Proof in;
        in.n = n;
        in.lines = {ProofLine{1, st.make_imp(p, st.make_imp(p, p)), Just::from_axiom(1)}};
        REQUIRE(throws_code([&] { deduction_transform(st, in); }, Errc::empty_premises));
    }

    SECTION("invalid input proof is rejected with the checker message") {
        Proof in;
        in.n = n;
        in.premises = {p};
        in.lines = {ProofLine{1, p, Just::from_premise(2)}};
        try {
            deduction_transform(st, in);
            FAIL("expected an error");
        } catch (const Error& e) {
            REQUIRE(e.code() == Errc::invalid_input);
            REQUIRE(std::string(e.what()).find("BadPremiseIndex") != std::string::npos);
        }
    }

    SECTION("random proofs with appended premises") {
        testing::RandomProof gen(st, 3, 20240817);
        for (int it = 0; it < 25; ++it) {
            FormulaId prem1 = gen.random_core(1);
            FormulaId prem2 = gen.random_core(1);
            ProofBuilder b(st, 3, {prem1, prem2});
            int l1 = b.premise(1);
            int l2 = b.premise(2);
            for (int a = 0; a < 3; ++a) {
                auto [id, f] = gen.random_axiom_instance();
                b.axiom_instance(id, f);
            }
            int last = derive::weaken(b, l1, b.formula_at(l2));
            Proof in = b.build_to(last);
            require_ok(st, in);

            Proof out = deduction_transform(st, in);
            REQUIRE(out.premises == std::vector<FormulaId>{prem1});
            REQUIRE(out.conclusion() == st.make_imp(prem2, in.conclusion()));
            require_ok(st, out);
        }
    }
}

TEST_CASE("reductio closes a contradiction pair") {
    Store st;
    int n = 2;
    FormulaId p = st.make_atom("p");
    FormulaId q = st.make_atom("q");
    FormulaId np = st.make_neg(Chain::full(n), p);
    FormulaId nq = st.make_neg(Chain::full(n), q);

    // {p, ¬ωp, ¬ωq} yields both p and ¬ωp, so reductio gives {p, ¬ωp} ⊢ q.
    std::vector<FormulaId> prem = {p, np, nq};
    ProofBuilder pos(st, n, prem);
    int lp = pos.premise(1);
    ProofBuilder neg(st, n, prem);
    int ln = neg.premise(2);

    Proof out = reductio(st, pos.build_to(lp), neg.build_to(ln));
    REQUIRE(out.premises == std::vector<FormulaId>{p, np});
    REQUIRE(out.conclusion() == q);
    require_sound(st, out);

    SECTION("premise lists must agree") {
        ProofBuilder other(st, n, {p, nq});
        int lo = other.premise(1);
        REQUIRE(throws_code([&] { reductio(st, pos.build_to(lp), other.build_to(lo)); },
                            Errc::invalid_input));
    }

    SECTION("last premise must be a full-chain negation") {
        std::vector<FormulaId> bad = {np, p};
        ProofBuilder a(st, n, bad);
        int la = a.premise(2);
        ProofBuilder b2(st, n, bad);
        int lb = b2.premise(1);
        REQUIRE(throws_code([&] { reductio(st, a.build_to(la), b2.build_to(lb)); },
                            Errc::invalid_input));
    }

    SECTION("conclusions must be ψ and ¬ωψ") {
        ProofBuilder a(st, n, prem);
        int la = a.premise(1);
        ProofBuilder b2(st, n, prem);
        int lb = b2.premise(3);  // ¬ωq, not ¬ωp
        REQUIRE(throws_code([&] { reductio(st, a.build_to(la), b2.build_to(lb)); },
                            Errc::invalid_input));
    }
}

TEST_CASE("classical theorem templates") {
    Store st;
    int n = 2;
    Derivations lib(st, n);
    FormulaId p = st.make_atom("p");
    FormulaId q = st.make_atom("q");
    FormulaId np = st.make_neg(Chain::full(n), p);
    FormulaId nq = st.make_neg(Chain::full(n), q);

    auto thm = [&](auto&& invoke) {
        ProofBuilder b(st, n);
        int l = invoke(b);
        Proof out = prune(b.build_to(l));
        require_ok(st, out);
        REQUIRE(out.premises.empty());
        REQUIRE(classify(st, out.conclusion(), n).kind == VerdictKind::Tautology);
        return out;
    };

    SECTION("double negation elimination and introduction") {
        Proof a = thm([&](ProofBuilder& b) { return lib.dneg_elim_thm(b, p); });
        REQUIRE(a.conclusion() == core(st, "~~p -> p", n));
        Proof b2 = thm([&](ProofBuilder& b) { return lib.dneg_intro_thm(b, p); });
        REQUIRE(b2.conclusion() == core(st, "p -> ~~p", n));
    }

    SECTION("ex falso over a weak contradiction") {
        Proof a = thm([&](ProofBuilder& b) { return lib.efq_thm(b, p, q); });
        REQUIRE(a.conclusion() == core(st, "~p -> (p -> q)", n));
    }

    SECTION("contraposition") {
        Proof a = thm([&](ProofBuilder& b) { return lib.contrapose_thm(b, p, q); });
        REQUIRE(a.conclusion() == core(st, "(p -> q) -> (~q -> ~p)", n));
    }

    SECTION("negated implication introduction") {
        Proof a = thm([&](ProofBuilder& b) { return lib.nimp_intro_thm(b, p, q); });
        REQUIRE(a.conclusion() == core(st, "p -> (~q -> ~(p -> q))", n));
    }

    SECTION("case elimination") {
        Proof a = thm([&](ProofBuilder& b) { return lib.cases_thm(b, p, q); });
        REQUIRE(a.conclusion() == core(st, "(p -> q) -> ((~p -> q) -> q)", n));
    }

    SECTION("modus tollens on lines") {
        ProofBuilder b(st, n, {st.make_imp(p, q), nq});
        int l = lib.mt(b, b.premise(1), b.premise(2));
        REQUIRE(b.formula_at(l) == np);
        require_sound(st, b.build_to(l));
    }

    SECTION("theorem cache reuses instances across builders") {
        ProofBuilder b1(st, n);
        lib.cases_thm(b1, p, q);
        ProofBuilder b2(st, n);
        int l = lib.cases_thm(b2, p, q);
        require_sound(st, prune(b2.build_to(l)));
    }
}

TEST_CASE("classical engine proves leaf-valid goals") {
    Store st;
    int n = 2;
    Derivations lib(st, n);

    auto prove = [&](const std::string& text) {
        FormulaId goal = core(st, text, n);
        ProofBuilder b(st, n);
        int l = lib.classical(b, goal);
        Proof out = prune(b.build_to(l));
        require_ok(st, out);
        REQUIRE(out.premises.empty());
        REQUIRE(out.conclusion() == goal);
        REQUIRE(classify(st, goal, n).kind == VerdictKind::Tautology);
        return out;
    };

    SECTION("Peirce's law") {
        prove("((p -> q) -> p) -> p");
    }

    SECTION("contraposition flipped") {
        prove("(~q -> ~p) -> (p -> q)");
    }

    SECTION("case elimination with a falsum leaf") {
        prove("(p -> bot{1}) -> ((~p -> bot{1}) -> bot{1})");
    }

    SECTION("strong negations stay opaque") {
        // ¬₁p is a leaf here, so this is just S → S for S = ¬₁p.
        prove("~{1} p -> ~{1} p");
    }

    SECTION("classically invalid goals are rejected") {
        ProofBuilder b(st, n);
        REQUIRE(throws_code([&] { lib.classical(b, core(st, "p -> q", n)); },
                            Errc::invalid_input));
        // ⊥ω is an opaque leaf, so ⊥ω → p is not leaf-valid even though it
        // holds semantically.
        REQUIRE(throws_code([&] { lib.classical(b, core(st, "bot -> p", n)); },
                            Errc::invalid_input));
    }

    SECTION("leaf bound") {
        std::string chain;
        for (int i = 0; i < 13; ++i) chain += "a" + std::to_string(i) + " -> (";
        chain += "a0";
        for (int i = 0; i < 13; ++i) chain += ")";
        ProofBuilder b(st, n);
        REQUIRE(throws_code([&] { lib.classical(b, core(st, chain, n)); },
                            Errc::bound_exceeded));
    }

    SECTION("by_classical derives from hypothesis lines") {
        FormulaId p = st.make_atom("p");
        FormulaId q = st.make_atom("q");
        FormulaId nq = st.make_neg(Chain::full(n), q);
        ProofBuilder b(st, n, {st.make_imp(p, q), nq});
        int l = lib.by_classical(b, st.make_neg(Chain::full(n), p),
                                 {b.premise(1), b.premise(2)});
        REQUIRE(b.formula_at(l) == st.make_neg(Chain::full(n), p));
        require_sound(st, b.build_to(l));
    }
}

TEST_CASE("equivalence unpacking") {
    Store st;
    int n = 2;
    Derivations lib(st, n);
    FormulaId p = st.make_atom("p");
    Chain c1 = Chain::canonical({1}, n);
    Chain c2 = Chain::canonical({2}, n);

    ProofBuilder b(st, n);
    int a5 = b.axiom(5, {{"phi", p}}, {{"k", c1}, {"r", c2}});
    int fwd = lib.iff_fwd(b, a5);
    REQUIRE(b.formula_at(fwd) == core(st, "~{1} ~{2} p -> ~{1,2} p", n));
    require_sound(st, b.build_to(fwd));
    int bwd = lib.iff_bwd(b, a5);
    REQUIRE(b.formula_at(bwd) == core(st, "~{1,2} p -> ~{1} ~{2} p", n));
    require_sound(st, b.build_to(bwd));

    REQUIRE(throws_code([&] { lib.iff_fwd(b, fwd); }, Errc::invalid_input));
}

TEST_CASE("chain rules") {
    Store st;
    int n = 2;
    Derivations lib(st, n);
    FormulaId p = st.make_atom("p");
    Chain c1 = Chain::canonical({1}, n);
    Chain c2 = Chain::canonical({2}, n);
    Chain full = Chain::full(n);

    SECTION("collide on a proper chain") {
        ProofBuilder b(st, n, {p, st.make_neg(c1, p)});
        int l = lib.collide(b, b.premise(1), b.premise(2));
        REQUIRE(b.formula_at(l) == st.make_bottom(c1));
        require_sound(st, b.build_to(l));
    }

    SECTION("collide on the full chain") {
        ProofBuilder b(st, n, {p, st.make_neg(full, p)});
        int l = lib.collide(b, b.premise(1), b.premise(2));
        REQUIRE(b.formula_at(l) == st.make_bottom(full));
        require_sound(st, b.build_to(l));
    }

    SECTION("collide rejects mismatched lines") {
        ProofBuilder b(st, n, {p, st.make_neg(c1, st.make_atom("q"))});
        REQUIRE(throws_code([&] { lib.collide(b, b.premise(1), b.premise(2)); },
                            Errc::invalid_input));
    }

    SECTION("falsum recovers the negated formula") {
        ProofBuilder b(st, n, {st.make_neg(c1, p)});
        int l = lib.rule_iii(b, b.premise(1));
        REQUIRE(b.formula_at(l) == core(st, "bot{1} -> p", n));
        require_sound(st, b.build_to(l));
    }

    SECTION("complementary falsum gives the weak negation") {
        ProofBuilder b(st, n, {st.make_neg(c1, p)});
        int l = lib.rule_iv(b, b.premise(1));
        REQUIRE(b.formula_at(l) == core(st, "bot{2} -> ~p", n));
        require_sound(st, b.build_to(l));
        ProofBuilder b2(st, n, {st.make_neg(full, p)});
        REQUIRE(throws_code([&] { lib.rule_iv(b2, b2.premise(1)); }, Errc::invalid_input));
    }

    SECTION("joining falsums") {
        ProofBuilder b(st, n, {st.make_bottom(c1), st.make_bottom(c2)});
        int l = lib.bottom_join(b, b.premise(1), b.premise(2));
        REQUIRE(b.formula_at(l) == st.make_bottom(full));
        require_sound(st, b.build_to(l));
    }

    SECTION("shrinking a falsum") {
        ProofBuilder b(st, n, {st.make_bottom(full)});
        int l = lib.bot_shrink(b, b.premise(1), c2);
        REQUIRE(b.formula_at(l) == st.make_bottom(c2));
        require_sound(st, b.build_to(l));
        REQUIRE(lib.bot_shrink(b, b.premise(1), full) == b.premise(1));
        REQUIRE(throws_code([&] { lib.bot_shrink(b, l, full); }, Errc::invalid_input));
    }

    SECTION("negated falsum against its complement") {
        ProofBuilder b(st, n, {st.make_neg(full, st.make_bottom(c1))});
        int l = lib.negbot_to_bot(b, b.premise(1));
        REQUIRE(b.formula_at(l) == st.make_bottom(c2));
        require_sound(st, b.build_to(l));

        ProofBuilder b2(st, n, {st.make_bottom(c2)});
        int l2 = lib.bot_to_negbot(b2, b2.premise(1), c1);
        REQUIRE(b2.formula_at(l2) == st.make_neg(full, st.make_bottom(c1)));
        require_sound(st, b2.build_to(l2));
    }

    SECTION("negation fusion both ways") {
        ProofBuilder b(st, n, {st.make_neg(c1, st.make_neg(c2, p))});
        int l = lib.a5_fwd(b, b.premise(1));
        REQUIRE(b.formula_at(l) == st.make_neg(full, p));
        require_sound(st, b.build_to(l));

        ProofBuilder b2(st, n, {st.make_neg(full, p)});
        int l2 = lib.a5_bwd(b2, b2.premise(1), c2, c1);
        REQUIRE(b2.formula_at(l2) == st.make_neg(c2, st.make_neg(c1, p)));
        require_sound(st, b2.build_to(l2));

        // k = r collapses to the bare formula.
        ProofBuilder b3(st, n, {st.make_neg(c1, st.make_neg(c1, p))});
        int l3 = lib.a5_fwd(b3, b3.premise(1));
        REQUIRE(b3.formula_at(l3) == p);
        require_sound(st, b3.build_to(l3));
        ProofBuilder b4(st, n, {p});
        int l4 = lib.a5_bwd(b4, b4.premise(1), c1, c1);
        REQUIRE(b4.formula_at(l4) == st.make_neg(c1, st.make_neg(c1, p)));
        require_sound(st, b4.build_to(l4));
    }
}
