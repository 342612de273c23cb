#include "seqpath/fixtures.hpp"

#include <stdexcept>

namespace seqpath {

namespace {

using Spec = NodeSpec;

Spec T(std::vector<double> u) { return Spec::terminal(std::move(u)); }

// Draw uniformly from the middle 90% of [lo, hi]; keeps samples clear of
// class boundaries so strict constraints hold with slack.
double interior(Rng& rng, double lo, double hi) {
  const double pad = 0.05 * (hi - lo);
  return rng.uniform(lo + pad, hi - pad);
}

struct Ctx {
  const GameTree& g;

  int is(PlayerId player, const std::string& label) const {
    const InformationSet* s = g.find_infoset(player, label);
    if (s == nullptr) throw GameError("fixture lookup: no infoset " + label);
    return s->global_index;
  }
};

Assessment blank_assessment(const GameTree& g) {
  Assessment as;
  as.profile = uniform_profile(g);
  as.beliefs.by_infoset.resize(g.infosets().size());
  for (const InformationSet& s : g.infosets()) {
    as.beliefs.by_infoset[s.global_index] =
        std::vector<double>(s.members.size(), 1.0 / s.members.size());
  }
  return as;
}

void strat(Assessment& as, const GameTree& g, int is_idx,
           std::vector<double> p) {
  const InformationSet& s = g.infosets()[is_idx];
  for (int a = 0; a < s.num_actions(); ++a)
    as.profile.probs[s.first_flat_index + a] = p[a];
}

void belief(Assessment& as, int is_idx, std::vector<double> p) {
  as.beliefs.by_infoset[is_idx] = std::move(p);
}

CoordConstraint sc(int is_idx, int action, double lo, double hi,
                   bool lo_open = false, bool hi_open = false) {
  return {CoordConstraint::Target::kStrategy, is_idx, action, lo, hi, lo_open,
          hi_open};
}

CoordConstraint bc(int is_idx, int member, double lo, double hi,
                   bool lo_open = false, bool hi_open = false) {
  return {CoordConstraint::Target::kBelief, is_idx, member, lo, hi, lo_open,
          hi_open};
}

std::vector<CoordConstraint> pure(int is_idx, int chosen, int num_actions) {
  std::vector<CoordConstraint> cs;
  for (int a = 0; a < num_actions; ++a) {
    const double v = a == chosen ? 1.0 : 0.0;
    cs.push_back(sc(is_idx, a, v, v));
  }
  return cs;
}

void append(std::vector<CoordConstraint>& out,
            std::vector<CoordConstraint> more) {
  out.insert(out.end(), more.begin(), more.end());
}

// ---------------------------------------------------------------------------
// FN: three-player game with a chance root; exercises every payoff operation.

FixtureGame make_fn() {
  auto a_branch = Spec::decision(
      1, "I1_1", {"s", "y"},
      {T({0, 0, 0}), Spec::decision(3, "I1_3", {"A", "B"},
                                    {T({0, 0, 4}), T({0, 0, 0})})});
  auto b_branch = Spec::decision(
      1, "I1_1", {"s", "y"},
      {T({0, 0, 0}),
       Spec::decision(
           2, "I1_2", {"d", "e"},
           {Spec::decision(3, "I1_3", {"A", "B"},
                           {T({0, 0, 8}), T({0, 0, 10})}),
            Spec::decision(
                3, "I2_3", {"F", "G"},
                {Spec::decision(2, "I2_2", {"L", "R"},
                                {T({0, 6, 0}), T({0, 4, 0})}),
                 T({0, 0, 0})})})});
  auto c_branch = Spec::decision(
      1, "I1_1", {"s", "y"},
      {T({0, 0, 0}),
       Spec::decision(
           2, "I1_2", {"d", "e"},
           {T({0, 0, 0}),
            Spec::decision(
                3, "I3_3", {"H", "K"},
                {Spec::decision(2, "I2_2", {"L", "R"},
                                {T({0, 8, 0}), T({0, 6, 0})}),
                 T({0, 0, 0})})})});
  auto root = Spec::chance({"a", "b", "c"}, {0.2, 0.2, 0.6},
                           {std::move(a_branch), std::move(b_branch),
                            std::move(c_branch)});

  FixtureGame f;
  f.name = "FN";
  f.title = "notation game (chance root, nested information sets)";
  f.game = std::make_shared<GameTree>("FN", std::vector<std::string>{"1", "2", "3"},
                                      root);
  f.notes = {
      "payoffs at terminals that do not feed any conditional-payoff "
      "expression are 0"};
  return f;
}

// ---------------------------------------------------------------------------
// F3: Selten's horse. Two families of sequential equilibria.

FixtureGame make_f3() {
  auto root = Spec::decision(
      1, "I1", {"D", "C"},
      {Spec::decision(3, "I3", {"L", "R"}, {T({3, 0, 2}), T({0, 0, 0})}),
       Spec::decision(
           2, "I2", {"d", "c"},
           {Spec::decision(3, "I3", {"L", "R"}, {T({4, 4, 0}), T({0, 0, 1})}),
            T({1, 1, 0})})});

  FixtureGame f;
  f.name = "F3";
  f.title = "Selten's horse";
  f.game = std::make_shared<GameTree>(
      "F3", std::vector<std::string>{"1", "2", "3"}, root);
  f.notes = {"u2 at D/L and D/R and u3 at C/c never enter any information "
             "set's incentives; set to 0"};
  const GameTree& g = *f.game;
  Ctx c{g};
  const int i1 = c.is(1, "I1"), i2 = c.is(2, "I2"), i3 = c.is(3, "I3");

  {
    EquilibriumClass t1;
    t1.label = "type-1";
    t1.constraints = pure(i1, 1, 2);  // C
    append(t1.constraints, pure(i2, 1, 2));  // c
    append(t1.constraints, pure(i3, 1, 2));  // R
    t1.constraints.push_back(bc(i3, 0, 0.0, 1.0 / 3.0, false, true));
    t1.sample = [&g, i1, i2, i3](Rng& rng) {
      Assessment as = blank_assessment(g);
      strat(as, g, i1, {0, 1});
      strat(as, g, i2, {0, 1});
      strat(as, g, i3, {0, 1});
      const double m = interior(rng, 0.0, 1.0 / 3.0);
      belief(as, i3, {m, 1 - m});
      belief(as, i1, {1});
      belief(as, i2, {1});
      return as;
    };
    f.classes.push_back(std::move(t1));
  }
  {
    EquilibriumClass t2;
    t2.label = "type-2";
    t2.constraints = pure(i1, 1, 2);
    append(t2.constraints, pure(i2, 1, 2));
    t2.constraints.push_back(sc(i3, 0, 0.0, 0.25));
    t2.constraints.push_back(sc(i3, 1, 0.75, 1.0));
    t2.constraints.push_back(bc(i3, 0, 1.0 / 3.0, 1.0 / 3.0));
    t2.sample = [&g, i1, i2, i3](Rng& rng) {
      Assessment as = blank_assessment(g);
      strat(as, g, i1, {0, 1});
      strat(as, g, i2, {0, 1});
      const double x = interior(rng, 0.0, 0.25);
      strat(as, g, i3, {x, 1 - x});
      belief(as, i3, {1.0 / 3.0, 2.0 / 3.0});
      belief(as, i1, {1});
      belief(as, i2, {1});
      return as;
    };
    f.classes.push_back(std::move(t2));
  }
  return f;
}

// ---------------------------------------------------------------------------
// F4: player 1 moves before and after player 2; three equilibrium families.

FixtureGame make_f4() {
  auto root = Spec::decision(
      1, "I1_1", {"A", "B"},
      {Spec::decision(
           2, "I1_2", {"L", "R"},
           {T({1, 3, 0}),
            Spec::decision(
                1, "I2_1", {"a", "b"},
                {T({2, 0, 0}),
                 Spec::decision(3, "I1_3", {"N", "Y"},
                                {T({0, 0, 5}), T({4, 4, 0})})})}),
       Spec::decision(3, "I1_3", {"N", "Y"}, {T({0, 0, 0}), T({3, 0, 3})})});

  FixtureGame f;
  f.name = "F4";
  f.title = "four information sets, player 1 moves twice";
  f.game = std::make_shared<GameTree>(
      "F4", std::vector<std::string>{"1", "2", "3"}, root);
  f.notes = {"u2 at B/N and B/Y and u3 at A/L and A/R/a never enter any "
             "information set's incentives; set to 0"};
  const GameTree& g = *f.game;
  Ctx c{g};
  const int i11 = c.is(1, "I1_1"), i21 = c.is(1, "I2_1"), i12 = c.is(2, "I1_2"),
            i13 = c.is(3, "I1_3");

  {
    EquilibriumClass t1;
    t1.label = "type-1";
    t1.constraints = pure(i11, 0, 2);  // A
    append(t1.constraints, pure(i21, 0, 2));  // a
    append(t1.constraints, pure(i12, 0, 2));  // L
    append(t1.constraints, pure(i13, 0, 2));  // N
    t1.constraints.push_back(bc(i13, 0, 3.0 / 8.0, 1.0, true, false));
    t1.sample = [&g, i11, i21, i12, i13](Rng& rng) {
      Assessment as = blank_assessment(g);
      strat(as, g, i11, {1, 0});
      strat(as, g, i21, {1, 0});
      strat(as, g, i12, {1, 0});
      strat(as, g, i13, {1, 0});
      const double m = interior(rng, 3.0 / 8.0, 1.0);
      belief(as, i13, {m, 1 - m});
      belief(as, i11, {1});
      belief(as, i21, {1});
      belief(as, i12, {1});
      return as;
    };
    f.classes.push_back(std::move(t1));
  }
  {
    EquilibriumClass t2;
    t2.label = "type-2";
    t2.constraints.push_back(sc(i11, 0, 24.0 / 49.0, 24.0 / 49.0));
    t2.constraints.push_back(sc(i11, 1, 25.0 / 49.0, 25.0 / 49.0));
    append(t2.constraints, pure(i21, 1, 2));  // b
    t2.constraints.push_back(sc(i12, 0, 3.0 / 8.0, 3.0 / 8.0));
    t2.constraints.push_back(sc(i12, 1, 5.0 / 8.0, 5.0 / 8.0));
    t2.constraints.push_back(sc(i13, 0, 0.25, 0.25));
    t2.constraints.push_back(sc(i13, 1, 0.75, 0.75));
    t2.constraints.push_back(bc(i13, 0, 3.0 / 8.0, 3.0 / 8.0));
    t2.sample = [&g, i11, i21, i12, i13](Rng&) {
      Assessment as = blank_assessment(g);
      strat(as, g, i11, {24.0 / 49.0, 25.0 / 49.0});
      strat(as, g, i21, {0, 1});
      strat(as, g, i12, {3.0 / 8.0, 5.0 / 8.0});
      strat(as, g, i13, {0.25, 0.75});
      belief(as, i13, {3.0 / 8.0, 5.0 / 8.0});
      belief(as, i11, {1});
      belief(as, i21, {1});
      belief(as, i12, {1});
      return as;
    };
    f.classes.push_back(std::move(t2));
  }
  {
    EquilibriumClass t3;
    t3.label = "type-3";
    t3.constraints = pure(i11, 0, 2);
    append(t3.constraints, pure(i21, 0, 2));
    append(t3.constraints, pure(i12, 0, 2));
    t3.constraints.push_back(sc(i13, 0, 2.0 / 3.0, 1.0));
    t3.constraints.push_back(sc(i13, 1, 0.0, 1.0 / 3.0));
    t3.constraints.push_back(bc(i13, 0, 3.0 / 8.0, 3.0 / 8.0));
    t3.sample = [&g, i11, i21, i12, i13](Rng& rng) {
      Assessment as = blank_assessment(g);
      strat(as, g, i11, {1, 0});
      strat(as, g, i21, {1, 0});
      strat(as, g, i12, {1, 0});
      const double y = interior(rng, 0.0, 1.0 / 3.0);
      strat(as, g, i13, {1 - y, y});
      belief(as, i13, {3.0 / 8.0, 5.0 / 8.0});
      belief(as, i11, {1});
      belief(as, i21, {1});
      belief(as, i12, {1});
      return as;
    };
    f.classes.push_back(std::move(t3));
  }
  return f;
}

// ---------------------------------------------------------------------------
// FA1: three-action root, one pooled responder set.

FixtureGame make_fa1() {
  auto root = Spec::decision(
      1, "I1_1", {"L", "M", "R"},
      {T({1, 0}),
       Spec::decision(2, "I1_2", {"L", "R"}, {T({3, 1}), T({-2, 0})}),
       Spec::decision(2, "I1_2", {"L", "R"}, {T({2, 0}), T({-1, 1})})});

  FixtureGame f;
  f.name = "FA1";
  f.title = "outside option with pooled responder";
  f.game = std::make_shared<GameTree>(
      "FA1", std::vector<std::string>{"1", "2"}, root);
  f.notes = {"u2 at the L terminal never enters any information set's "
             "incentives; set to 0"};
  const GameTree& g = *f.game;
  Ctx c{g};
  const int i1 = c.is(1, "I1_1"), i2 = c.is(2, "I1_2");

  {
    EquilibriumClass k1;
    k1.label = "class-1";
    k1.constraints = pure(i1, 1, 3);  // M
    append(k1.constraints, pure(i2, 0, 2));  // L
    k1.constraints.push_back(bc(i2, 0, 1.0, 1.0));
    k1.sample = [&g, i1, i2](Rng&) {
      Assessment as = blank_assessment(g);
      strat(as, g, i1, {0, 1, 0});
      strat(as, g, i2, {1, 0});
      belief(as, i2, {1, 0});
      belief(as, i1, {1});
      return as;
    };
    f.classes.push_back(std::move(k1));
  }
  {
    EquilibriumClass k2;
    k2.label = "class-2";
    k2.constraints = pure(i1, 0, 3);  // L
    append(k2.constraints, pure(i2, 1, 2));  // R
    k2.constraints.push_back(bc(i2, 1, 0.5, 1.0, true, false));
    k2.sample = [&g, i1, i2](Rng& rng) {
      Assessment as = blank_assessment(g);
      strat(as, g, i1, {1, 0, 0});
      strat(as, g, i2, {0, 1});
      const double m = interior(rng, 0.5, 1.0);
      belief(as, i2, {1 - m, m});
      belief(as, i1, {1});
      return as;
    };
    f.classes.push_back(std::move(k2));
  }
  {
    EquilibriumClass k3;
    k3.label = "class-3";
    k3.constraints = pure(i1, 0, 3);
    k3.constraints.push_back(sc(i2, 0, 0.0, 0.6));
    k3.constraints.push_back(sc(i2, 1, 0.4, 1.0));
    k3.constraints.push_back(bc(i2, 1, 0.5, 0.5));
    k3.sample = [&g, i1, i2](Rng& rng) {
      Assessment as = blank_assessment(g);
      strat(as, g, i1, {1, 0, 0});
      const double x = interior(rng, 0.0, 0.6);
      strat(as, g, i2, {x, 1 - x});
      belief(as, i2, {0.5, 0.5});
      belief(as, i1, {1});
      return as;
    };
    f.classes.push_back(std::move(k3));
  }
  return f;
}

// ---------------------------------------------------------------------------
// FA2: fourteen families; player 3 moves at two symmetric sets.

FixtureGame make_fa2() {
  auto p3_set = [](const std::string& label) {
    return [label](bool after_l2) {
      if (after_l2)
        return Spec::decision(3, label, {"a", "b", "c"},
                              {T({0, 0, 3}), T({0, 0, 0}), T({0, 0, 2})});
      return Spec::decision(3, label, {"a", "b", "c"},
                            {T({0, 0, 0}), T({0, 0, 3}), T({0, 0, 2})});
    };
  };
  auto left_set = p3_set("I1_3");
  auto right_set = p3_set("I2_3");
  auto root = Spec::decision(
      1, "I1_1", {"L'", "R'"},
      {Spec::decision(2, "I1_2", {"A''", "L''", "R''"},
                      {T({1, 1, 0}), left_set(true), left_set(false)}),
       Spec::decision(2, "I1_2", {"A''", "L''", "R''"},
                      {T({0, 0, 0}), right_set(true), right_set(false)})});

  FixtureGame f;
  f.name = "FA2";
  f.title = "pooled three-action responder with twin player-3 sets";
  f.game = std::make_shared<GameTree>(
      "FA2", std::vector<std::string>{"1", "2", "3"}, root);
  f.notes = {"u3 at L'/A'' and R'/A'' never enters any information set's "
             "incentives; set to 0"};
  const GameTree& g = *f.game;
  Ctx c{g};
  const int i1 = c.is(1, "I1_1"), i2 = c.is(2, "I1_2"), l3 = c.is(3, "I1_3"),
            r3 = c.is(3, "I2_3");
  const double third = 1.0 / 3.0;

  // Shared assembly: root choice, player-2 vector, player-3 vectors, belief
  // on the second member (x) or the first (1-x swap handled by caller).
  auto base = [&g, i1, i2, l3, r3](std::vector<double> p1,
                                   std::vector<double> p2,
                                   std::vector<double> q_l,
                                   std::vector<double> q_r, double mu_first) {
    Assessment as = blank_assessment(g);
    strat(as, g, i1, std::move(p1));
    strat(as, g, i2, std::move(p2));
    strat(as, g, l3, std::move(q_l));
    strat(as, g, r3, std::move(q_r));
    belief(as, l3, {mu_first, 1 - mu_first});
    belief(as, r3, {mu_first, 1 - mu_first});
    belief(as, i1, {1});
    belief(as, i2, {as.profile(g, i1, 0), as.profile(g, i1, 1)});
    return as;
  };

  auto add = [&f](EquilibriumClass k) { f.classes.push_back(std::move(k)); };

  // Classes 1-7: player 1 plays L', player 2 plays A''.
  auto lhead = [&]() {
    std::vector<CoordConstraint> cs = pure(i1, 0, 2);
    append(cs, pure(i2, 0, 3));
    cs.push_back(bc(i2, 0, 1.0, 1.0));
    return cs;
  };
  {
    EquilibriumClass k{"class-1", lhead(), nullptr};
    append(k.constraints, pure(l3, 0, 3));
    append(k.constraints, pure(r3, 0, 3));
    k.constraints.push_back(bc(l3, 1, 0.0, third, false, true));
    k.constraints.push_back(bc(r3, 1, 0.0, third, false, true));
    k.sample = [base, third](Rng& rng) {
      const double x = interior(rng, 0.0, third);
      return base({1, 0}, {1, 0, 0}, {1, 0, 0}, {1, 0, 0}, 1 - x);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-2", lhead(), nullptr};
    append(k.constraints, pure(l3, 2, 3));
    append(k.constraints, pure(r3, 2, 3));
    k.constraints.push_back(bc(l3, 1, third, 0.5, true, true));
    k.constraints.push_back(bc(r3, 1, third, 0.5, true, true));
    k.sample = [base, third](Rng& rng) {
      const double x = interior(rng, third, 0.5);
      return base({1, 0}, {1, 0, 0}, {0, 0, 1}, {0, 0, 1}, 1 - x);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-3", lhead(), nullptr};
    k.constraints.push_back(sc(l3, 1, 0.0, 0.0));
    k.constraints.push_back(sc(r3, 1, 0.0, 0.0));
    k.constraints.push_back(bc(l3, 1, third, third));
    k.constraints.push_back(bc(r3, 1, third, third));
    k.sample = [base, third](Rng& rng) {
      const double q1 = rng.uniform(), q2 = rng.uniform();
      return base({1, 0}, {1, 0, 0}, {q1, 0, 1 - q1}, {q2, 0, 1 - q2},
                  1 - third);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-4", lhead(), nullptr};
    append(k.constraints, pure(l3, 1, 3));
    append(k.constraints, pure(r3, 1, 3));
    k.constraints.push_back(bc(l3, 0, 0.0, third, false, true));
    k.constraints.push_back(bc(r3, 0, 0.0, third, false, true));
    k.sample = [base, third](Rng& rng) {
      const double m = interior(rng, 0.0, third);
      return base({1, 0}, {1, 0, 0}, {0, 1, 0}, {0, 1, 0}, m);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-5", lhead(), nullptr};
    append(k.constraints, pure(l3, 2, 3));
    append(k.constraints, pure(r3, 2, 3));
    k.constraints.push_back(bc(l3, 0, third, 0.5, true, true));
    k.constraints.push_back(bc(r3, 0, third, 0.5, true, true));
    k.sample = [base, third](Rng& rng) {
      const double m = interior(rng, third, 0.5);
      return base({1, 0}, {1, 0, 0}, {0, 0, 1}, {0, 0, 1}, m);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-6", lhead(), nullptr};
    k.constraints.push_back(sc(l3, 0, 0.0, 0.0));
    k.constraints.push_back(sc(r3, 0, 0.0, 0.0));
    k.constraints.push_back(bc(l3, 0, third, third));
    k.constraints.push_back(bc(r3, 0, third, third));
    k.sample = [base, third](Rng& rng) {
      const double q1 = rng.uniform(), q2 = rng.uniform();
      return base({1, 0}, {1, 0, 0}, {0, q1, 1 - q1}, {0, q2, 1 - q2}, third);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-7", lhead(), nullptr};
    append(k.constraints, pure(l3, 2, 3));
    append(k.constraints, pure(r3, 2, 3));
    k.constraints.push_back(bc(l3, 0, 0.5, 0.5));
    k.constraints.push_back(bc(r3, 0, 0.5, 0.5));
    k.sample = [base](Rng&) {
      return base({1, 0}, {1, 0, 0}, {0, 0, 1}, {0, 0, 1}, 0.5);
    };
    add(std::move(k));
  }

  // Classes 8-14: player 1 plays R', player 2 avoids A''.
  auto rhead = [&]() {
    std::vector<CoordConstraint> cs = pure(i1, 1, 2);
    cs.push_back(sc(i2, 0, 0.0, 0.0));
    cs.push_back(bc(i2, 0, 0.0, 0.0));
    return cs;
  };
  {
    EquilibriumClass k{"class-8", rhead(), nullptr};
    k.constraints.push_back(sc(i2, 2, 0.0, third, false, true));
    append(k.constraints, pure(l3, 0, 3));
    append(k.constraints, pure(r3, 0, 3));
    k.constraints.push_back(bc(l3, 1, 0.0, third, false, true));
    k.constraints.push_back(bc(r3, 1, 0.0, third, false, true));
    k.sample = [base, third](Rng& rng) {
      const double x = interior(rng, 0.0, third);
      return base({0, 1}, {0, 1 - x, x}, {1, 0, 0}, {1, 0, 0}, 1 - x);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-9", rhead(), nullptr};
    k.constraints.push_back(sc(i2, 2, third, 0.5, true, true));
    append(k.constraints, pure(l3, 2, 3));
    append(k.constraints, pure(r3, 2, 3));
    k.constraints.push_back(bc(l3, 1, third, 0.5, true, true));
    k.constraints.push_back(bc(r3, 1, third, 0.5, true, true));
    k.sample = [base, third](Rng& rng) {
      const double x = interior(rng, third, 0.5);
      return base({0, 1}, {0, 1 - x, x}, {0, 0, 1}, {0, 0, 1}, 1 - x);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-10", rhead(), nullptr};
    k.constraints.push_back(sc(i2, 1, 2.0 / 3.0, 2.0 / 3.0));
    k.constraints.push_back(sc(i2, 2, third, third));
    k.constraints.push_back(sc(l3, 1, 0.0, 0.0));
    k.constraints.push_back(sc(r3, 1, 0.0, 0.0));
    k.constraints.push_back(bc(l3, 1, third, third));
    k.constraints.push_back(bc(r3, 1, third, third));
    k.sample = [base, third](Rng& rng) {
      const double q1 = rng.uniform(), q2 = rng.uniform();
      return base({0, 1}, {0, 2.0 / 3.0, third}, {q1, 0, 1 - q1},
                  {q2, 0, 1 - q2}, 1 - third);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-11", rhead(), nullptr};
    k.constraints.push_back(sc(i2, 1, 0.0, third, false, true));
    append(k.constraints, pure(l3, 1, 3));
    append(k.constraints, pure(r3, 1, 3));
    k.constraints.push_back(bc(l3, 0, 0.0, third, false, true));
    k.constraints.push_back(bc(r3, 0, 0.0, third, false, true));
    k.sample = [base, third](Rng& rng) {
      const double y = interior(rng, 0.0, third);
      return base({0, 1}, {0, y, 1 - y}, {0, 1, 0}, {0, 1, 0}, y);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-12", rhead(), nullptr};
    k.constraints.push_back(sc(i2, 1, third, 0.5, true, true));
    append(k.constraints, pure(l3, 2, 3));
    append(k.constraints, pure(r3, 2, 3));
    k.constraints.push_back(bc(l3, 0, third, 0.5, true, true));
    k.constraints.push_back(bc(r3, 0, third, 0.5, true, true));
    k.sample = [base, third](Rng& rng) {
      const double y = interior(rng, third, 0.5);
      return base({0, 1}, {0, y, 1 - y}, {0, 0, 1}, {0, 0, 1}, y);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-13", rhead(), nullptr};
    k.constraints.push_back(sc(i2, 1, third, third));
    k.constraints.push_back(sc(i2, 2, 2.0 / 3.0, 2.0 / 3.0));
    k.constraints.push_back(sc(l3, 0, 0.0, 0.0));
    k.constraints.push_back(sc(r3, 0, 0.0, 0.0));
    k.constraints.push_back(bc(l3, 0, third, third));
    k.constraints.push_back(bc(r3, 0, third, third));
    k.sample = [base, third](Rng& rng) {
      const double q1 = rng.uniform(), q2 = rng.uniform();
      return base({0, 1}, {0, third, 2.0 / 3.0}, {0, q1, 1 - q1},
                  {0, q2, 1 - q2}, third);
    };
    add(std::move(k));
  }
  {
    EquilibriumClass k{"class-14", rhead(), nullptr};
    k.constraints.push_back(sc(i2, 1, 0.5, 0.5));
    k.constraints.push_back(sc(i2, 2, 0.5, 0.5));
    append(k.constraints, pure(l3, 2, 3));
    append(k.constraints, pure(r3, 2, 3));
    k.constraints.push_back(bc(l3, 0, 0.5, 0.5));
    k.constraints.push_back(bc(r3, 0, 0.5, 0.5));
    k.sample = [base](Rng&) {
      return base({0, 1}, {0, 0.5, 0.5}, {0, 0, 1}, {0, 0, 1}, 0.5);
    };
    add(std::move(k));
  }
  return f;
}

// ---------------------------------------------------------------------------
// F1: two players, five information sets, one fully determined equilibrium.
// Payoffs realize the unique sequential equilibrium
// (B, (2/7, 5/7), Y, (1/8, 7/8), D') with belief 1/8 on A/U.

FixtureGame make_f1() {
  auto p1_lr = [](double ul1, double ul2, double ur1, double ur2) {
    return Spec::decision(1, "I2_1", {"L", "R"},
                          {T({ul1, ul2}), T({ur1, ur2})});
  };
  auto root = Spec::decision(
      1, "I1_1", {"A", "B"},
      {Spec::decision(2, "I1_2", {"U", "D"},
                      {p1_lr(7, 0, 0, 2), p1_lr(0, 5, 1, 0)}),
       Spec::decision(
           2, "I2_2", {"U'", "D'"},
           {Spec::decision(1, "I3_1", {"Y", "N"}, {T({1, 0}), T({0, 0})}),
            T({2, 1})})});

  FixtureGame f;
  f.name = "F1";
  f.title = "two-player game with an interior mixing block";
  f.game = std::make_shared<GameTree>(
      "F1", std::vector<std::string>{"1", "2"}, root);
  f.notes = {"payoffs constructed so the unique sequential equilibrium is "
             "(B, (2/7,5/7), Y, (1/8,7/8), D') with belief 1/8 on A/U"};
  const GameTree& g = *f.game;
  Ctx c{g};
  const int i11 = c.is(1, "I1_1"), i21 = c.is(1, "I2_1"), i31 = c.is(1, "I3_1"),
            i12 = c.is(2, "I1_2"), i22 = c.is(2, "I2_2");

  EquilibriumClass k;
  k.label = "unique";
  append(k.constraints, pure(i11, 1, 2));  // B
  k.constraints.push_back(sc(i21, 0, 2.0 / 7.0, 2.0 / 7.0));
  k.constraints.push_back(sc(i21, 1, 5.0 / 7.0, 5.0 / 7.0));
  append(k.constraints, pure(i31, 0, 2));  // Y
  k.constraints.push_back(sc(i12, 0, 1.0 / 8.0, 1.0 / 8.0));
  k.constraints.push_back(sc(i12, 1, 7.0 / 8.0, 7.0 / 8.0));
  append(k.constraints, pure(i22, 1, 2));  // D'
  k.constraints.push_back(bc(i21, 0, 1.0 / 8.0, 1.0 / 8.0));
  k.sample = [&g, i11, i21, i31, i12, i22](Rng&) {
    Assessment as = blank_assessment(g);
    strat(as, g, i11, {0, 1});
    strat(as, g, i21, {2.0 / 7.0, 5.0 / 7.0});
    strat(as, g, i31, {1, 0});
    strat(as, g, i12, {1.0 / 8.0, 7.0 / 8.0});
    strat(as, g, i22, {0, 1});
    belief(as, i21, {1.0 / 8.0, 7.0 / 8.0});
    belief(as, i11, {1});
    belief(as, i31, {1});
    belief(as, i12, {1});
    belief(as, i22, {1});
    return as;
  };
  f.classes.push_back(std::move(k));
  return f;
}

// ---------------------------------------------------------------------------
// F2: three players, six information sets. Payoffs realize the unique
// sequential equilibrium (R, (2/3,1/3), E, (2/3,1/3), G, L) with belief 1/3
// on L/B and 0 on R/F/G.

FixtureGame make_f2() {
  auto p3_set = [](double l1, double l2, double l3) {
    return Spec::decision(3, "I1_3", {"L", "M"},
                          {T({l1, l2, l3}), T({0, 0, 0})});
  };
  auto root = Spec::decision(
      1, "I1_1", {"L", "R"},
      {Spec::decision(
           1, "I2_1", {"A", "B"},
           {Spec::decision(2, "I1_2", {"C", "D"},
                           {T({1, 0, 0}), T({0, 1, 0})}),
            Spec::decision(2, "I1_2", {"C", "D"},
                           {T({0, 2, 0}), T({2, 0, 0})})}),
       Spec::decision(
           1, "I3_1", {"E", "F"},
           {p3_set(2, 0, 1),
            Spec::decision(2, "I2_2", {"G", "H"},
                           {p3_set(1, 1, 1), T({0, 0, 0})})})});

  FixtureGame f;
  f.name = "F2";
  f.title = "three-player game with two mixing blocks";
  f.game = std::make_shared<GameTree>(
      "F2", std::vector<std::string>{"1", "2", "3"}, root);
  f.notes = {"payoffs constructed so the unique sequential equilibrium is "
             "(R, (2/3,1/3), E, (2/3,1/3), G, L) with beliefs 1/3 on L/B and "
             "0 on R/F/G"};
  const GameTree& g = *f.game;
  Ctx c{g};
  const int i11 = c.is(1, "I1_1"), i21 = c.is(1, "I2_1"), i31 = c.is(1, "I3_1"),
            i12 = c.is(2, "I1_2"), i22 = c.is(2, "I2_2"), i13 = c.is(3, "I1_3");

  EquilibriumClass k;
  k.label = "unique";
  append(k.constraints, pure(i11, 1, 2));  // R
  k.constraints.push_back(sc(i21, 0, 2.0 / 3.0, 2.0 / 3.0));
  k.constraints.push_back(sc(i21, 1, 1.0 / 3.0, 1.0 / 3.0));
  append(k.constraints, pure(i31, 0, 2));  // E
  k.constraints.push_back(sc(i12, 0, 2.0 / 3.0, 2.0 / 3.0));
  k.constraints.push_back(sc(i12, 1, 1.0 / 3.0, 1.0 / 3.0));
  append(k.constraints, pure(i22, 0, 2));  // G
  append(k.constraints, pure(i13, 0, 2));  // L
  k.constraints.push_back(bc(i12, 1, 1.0 / 3.0, 1.0 / 3.0));
  k.constraints.push_back(bc(i13, 1, 0.0, 0.0));
  k.sample = [&g, i11, i21, i31, i12, i22, i13](Rng&) {
    Assessment as = blank_assessment(g);
    strat(as, g, i11, {0, 1});
    strat(as, g, i21, {2.0 / 3.0, 1.0 / 3.0});
    strat(as, g, i31, {1, 0});
    strat(as, g, i12, {2.0 / 3.0, 1.0 / 3.0});
    strat(as, g, i22, {1, 0});
    strat(as, g, i13, {1, 0});
    belief(as, i12, {2.0 / 3.0, 1.0 / 3.0});
    belief(as, i13, {1, 0});
    belief(as, i11, {1});
    belief(as, i21, {1});
    belief(as, i31, {1});
    belief(as, i22, {1});
    return as;
  };
  f.classes.push_back(std::move(k));
  return f;
}

}  // namespace

const std::vector<FixtureGame>& fixtures() {
  static const std::vector<FixtureGame>* all = [] {
    auto* v = new std::vector<FixtureGame>();
    v->push_back(make_f1());
    v->push_back(make_f2());
    v->push_back(make_f3());
    v->push_back(make_f4());
    v->push_back(make_fa1());
    v->push_back(make_fa2());
    v->push_back(make_fn());
    return v;
  }();
  return *all;
}

const FixtureGame& fixture(const std::string& name) {
  for (const FixtureGame& f : fixtures())
    if (f.name == name) return f;
  throw GameError("no fixture named '" + name + "'");
}

}  // namespace seqpath
