#ifndef DPCOVER_CDCL_HPP
#define DPCOVER_CDCL_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "dpcover/cover.hpp"
#include "dpcover/errors.hpp"

namespace dpcover::detail {

/// Default conflict budget for a single CNF decision query.
constexpr std::uint64_t kMaxDecisionConflicts = 20'000'000;

// Conflict-driven clause-learning SAT solver: first-UIP learning with
// clause minimization, two watched literals, VSIDS-style activities with
// phase saving, Luby restarts, and LBD-guided deletion of learnt clauses.
// Serves as an independent decision engine for single-index transversals,
// cross-checked against the backtracking search: an algorithmically
// unrelated second opinion on instances beyond brute-force reach.
//
// Literal encoding: 2*v for x_v, 2*v + 1 for !x_v.
class CdclSolver {
public:
    explicit CdclSolver(int nVars)
        : nVars_(nVars),
          value_(static_cast<std::size_t>(nVars), kUndef),
          level_(static_cast<std::size_t>(nVars), 0),
          reason_(static_cast<std::size_t>(nVars), -1),
          activity_(static_cast<std::size_t>(nVars), 0.0),
          // default decision polarity is true: in the transversal encoding
          // only positive assignments propagate, so deciding false just
          // deepens the trail without constraining anything
          phase_(static_cast<std::size_t>(nVars), 1),
          seen_(static_cast<std::size_t>(nVars), 0),
          levelStamp_(static_cast<std::size_t>(nVars) + 1, 0),
          watches_(2 * static_cast<std::size_t>(nVars)) {
        trail_.reserve(static_cast<std::size_t>(nVars));
        for (int v = 0; v < nVars; ++v) order_.push({0.0, v});
    }

    /// Add a problem clause over the signed-literal encoding. May be called
    /// only before solve(). Empty clauses mark the instance unsatisfiable.
    void addClause(const std::vector<int>& in) {
        if (!ok_) return;
        std::vector<int> lits(in);
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        std::vector<int> kept;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (i + 1 < lits.size() && lits[i + 1] == (lits[i] ^ 1)) return;
            const int v = litValue(lits[i]);
            if (v == kTrue) return;
            if (v == kUndef) kept.push_back(lits[i]);
        }
        if (kept.empty()) {
            ok_ = false;
        } else if (kept.size() == 1) {
            uncheckedEnqueue(kept[0], -1);
            ok_ = (propagate() == -1);
        } else {
            attachClause(kept, /*lbd=*/0);
        }
    }

    /// Satisfiability of the accumulated clause set, or nullopt when the
    /// conflict budget runs out first. On true, every variable has a model
    /// value readable via modelValue().
    std::optional<bool> solve(std::uint64_t maxConflicts = kMaxDecisionConflicts) {
        if (!ok_) return false;
        std::uint64_t restartAt = kRestartBase;
        std::uint64_t restarts = 0;
        std::uint64_t reduceAt = kReduceBase;
        for (;;) {
            const int confl = propagate();
            if (confl != -1) {
                if (decisionLevel() == 0) return false;
                if (++conflicts_ > maxConflicts) return std::nullopt;
                std::vector<int> learnt;
                int btLevel = 0;
                int lbd = 0;
                analyze(confl, learnt, btLevel, lbd);
                cancelUntil(btLevel);
                if (learnt.size() == 1) {
                    uncheckedEnqueue(learnt[0], -1);
                } else {
                    const int ref = attachClause(learnt, std::max(lbd, 1));
                    learnts_.push_back(ref);
                    uncheckedEnqueue(learnt[0], ref);
                }
                varInc_ *= kActivityDecayInv;
                continue;
            }
            if (conflicts_ >= reduceAt) {
                reduceAt = conflicts_ + kReduceBase + kReduceRamp * ++reductions_;
                reduceDB();
            }
            if (conflicts_ >= restartAt) {
                restartAt = conflicts_ + kRestartBase * luby(restarts++);
                cancelUntil(0);
                continue;
            }
            if (static_cast<int>(trail_.size()) == nVars_) return true;
            const int v = pickBranchVar();
            trailLim_.push_back(static_cast<int>(trail_.size()));
            uncheckedEnqueue(2 * v + (phase_[static_cast<std::size_t>(v)] ? 0 : 1), -1);
        }
    }

    bool modelValue(int var) const {
        return value_[static_cast<std::size_t>(var)] == 1;
    }

    std::uint64_t conflictCount() const { return conflicts_; }

private:
    static constexpr signed char kUndef = -1;
    static constexpr int kTrue = 1;
    static constexpr int kFalse = 0;
    static constexpr std::uint64_t kRestartBase = 64;
    static constexpr std::uint64_t kReduceBase = 2000;
    static constexpr std::uint64_t kReduceRamp = 500;
    static constexpr int kKeepLbd = 3;
    static constexpr double kActivityDecayInv = 1.0 / 0.95;

    struct Watcher {
        int ref;
        int blocker;
    };

    static int litVar(int p) { return p >> 1; }
    static int litNeg(int p) { return p ^ 1; }

    // kTrue / kFalse / kUndef for a literal under the current assignment
    int litValue(int p) const {
        const signed char v = value_[static_cast<std::size_t>(litVar(p))];
        if (v == kUndef) return kUndef;
        return static_cast<int>(v) ^ (p & 1);
    }

    int decisionLevel() const { return static_cast<int>(trailLim_.size()); }

    // Clause arena layout: [size][lbd][lits...]; a clause ref is the offset
    // of its size field, negated size marks a deleted clause. lbd = 0 marks
    // problem clauses (never deleted). The implied literal of a reason
    // clause sits at lits[0].
    int clauseSize(int ref) const { return arena_[static_cast<std::size_t>(ref)]; }
    int clauseLbd(int ref) const { return arena_[static_cast<std::size_t>(ref) + 1]; }
    const int* clauseLits(int ref) const { return &arena_[static_cast<std::size_t>(ref) + 2]; }
    int* clauseLits(int ref) { return &arena_[static_cast<std::size_t>(ref) + 2]; }

    int attachClause(const std::vector<int>& lits, int lbd) {
        const int ref = static_cast<int>(arena_.size());
        arena_.push_back(static_cast<int>(lits.size()));
        arena_.push_back(lbd);
        arena_.insert(arena_.end(), lits.begin(), lits.end());
        watches_[static_cast<std::size_t>(lits[0])].push_back({ref, lits[1]});
        watches_[static_cast<std::size_t>(lits[1])].push_back({ref, lits[0]});
        return ref;
    }

    bool locked(int ref) const {
        const int p = clauseLits(ref)[0];
        return litValue(p) == kTrue &&
               reason_[static_cast<std::size_t>(litVar(p))] == ref;
    }

    // Drop the worst half of the non-glue learnt clauses (by LBD). Deleted
    // clauses are flagged in place; their watchers evaporate lazily during
    // propagation.
    void reduceDB() {
        std::vector<int> cand;
        for (const int ref : learnts_)
            if (clauseSize(ref) > 0 && clauseLbd(ref) > kKeepLbd && !locked(ref))
                cand.push_back(ref);
        std::sort(cand.begin(), cand.end(), [this](int a, int b) {
            if (clauseLbd(a) != clauseLbd(b)) return clauseLbd(a) > clauseLbd(b);
            return clauseSize(a) > clauseSize(b);
        });
        for (std::size_t i = 0; i < cand.size() / 2; ++i)
            arena_[static_cast<std::size_t>(cand[i])] = -clauseSize(cand[i]);
        learnts_.erase(std::remove_if(learnts_.begin(), learnts_.end(),
                                      [this](int r) { return clauseSize(r) < 0; }),
                       learnts_.end());
    }

    void uncheckedEnqueue(int p, int reasonRef) {
        const auto v = static_cast<std::size_t>(litVar(p));
        value_[v] = static_cast<signed char>(1 - (p & 1));
        level_[v] = decisionLevel();
        reason_[v] = reasonRef;
        trail_.push_back(p);
    }

    // Returns the ref of a conflicting clause, or -1 when propagation
    // reaches a fixed point.
    int propagate() {
        while (qhead_ < trail_.size()) {
            const int p = trail_[qhead_++];
            auto& ws = watches_[static_cast<std::size_t>(litNeg(p))];
            std::size_t i = 0;
            std::size_t j = 0;
            while (i < ws.size()) {
                const Watcher w = ws[i++];
                if (litValue(w.blocker) == kTrue) {
                    ws[j++] = w;
                    continue;
                }
                const int ref = w.ref;
                const int sz = arena_[static_cast<std::size_t>(ref)];
                if (sz < 0) continue; // deleted clause: drop the watcher
                int* lits = clauseLits(ref);
                const int falseLit = litNeg(p);
                if (lits[0] == falseLit) std::swap(lits[0], lits[1]);
                if (litValue(lits[0]) == kTrue) {
                    ws[j++] = {ref, lits[0]};
                    continue;
                }
                bool moved = false;
                for (int t = 2; t < sz; ++t) {
                    if (litValue(lits[t]) != kFalse) {
                        std::swap(lits[1], lits[t]);
                        watches_[static_cast<std::size_t>(lits[1])].push_back(
                            {ref, lits[0]});
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = {ref, lits[0]};
                if (litValue(lits[0]) == kFalse) {
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead_ = trail_.size();
                    return ref;
                }
                uncheckedEnqueue(lits[0], ref);
            }
            ws.resize(j);
        }
        return -1;
    }

    // First-UIP conflict analysis with basic self-subsumption minimization;
    // learnt[0] is the asserting literal and learnt[1] (when present)
    // carries the backjump level. lbd counts distinct decision levels.
    void analyze(int confl, std::vector<int>& learnt, int& btLevel, int& lbd) {
        learnt.assign(1, -1);
        int pathC = 0;
        int p = -1;
        int idx = static_cast<int>(trail_.size()) - 1;
        int ref = confl;
        do {
            const int sz = clauseSize(ref);
            const int* lits = clauseLits(ref);
            for (int t = (p == -1) ? 0 : 1; t < sz; ++t) {
                const int q = lits[t];
                const auto v = static_cast<std::size_t>(litVar(q));
                if (seen_[v] || level_[v] == 0) continue;
                seen_[v] = 1;
                bumpActivity(static_cast<int>(v));
                if (level_[v] == decisionLevel())
                    ++pathC;
                else
                    learnt.push_back(q);
            }
            while (!seen_[static_cast<std::size_t>(litVar(trail_[static_cast<std::size_t>(idx)]))])
                --idx;
            p = trail_[static_cast<std::size_t>(idx--)];
            ref = reason_[static_cast<std::size_t>(litVar(p))];
            seen_[static_cast<std::size_t>(litVar(p))] = 0;
            --pathC;
        } while (pathC > 0);
        learnt[0] = litNeg(p);

        // drop tail literals whose whole reason clause is already in the
        // learnt clause (or fixed at level 0)
        std::vector<int> toClear(learnt.begin(), learnt.end());
        std::size_t keep = 1;
        for (std::size_t t = 1; t < learnt.size(); ++t) {
            const int r = reason_[static_cast<std::size_t>(litVar(learnt[t]))];
            if (r == -1 || !reasonSubsumed(r)) learnt[keep++] = learnt[t];
        }
        learnt.resize(keep);

        if (learnt.size() == 1) {
            btLevel = 0;
        } else {
            std::size_t maxI = 1;
            for (std::size_t t = 2; t < learnt.size(); ++t)
                if (level_[static_cast<std::size_t>(litVar(learnt[t]))] >
                    level_[static_cast<std::size_t>(litVar(learnt[maxI]))])
                    maxI = t;
            std::swap(learnt[1], learnt[maxI]);
            btLevel = level_[static_cast<std::size_t>(litVar(learnt[1]))];
        }

        ++stamp_;
        lbd = 0;
        for (const int q : learnt) {
            const int lv = level_[static_cast<std::size_t>(litVar(q))];
            if (levelStamp_[static_cast<std::size_t>(lv)] != stamp_) {
                levelStamp_[static_cast<std::size_t>(lv)] = stamp_;
                ++lbd;
            }
        }
        for (const int q : toClear) seen_[static_cast<std::size_t>(litVar(q))] = 0;
    }

    // true iff every literal of the reason clause (beyond its implied
    // literal) is already marked seen or fixed at level 0
    bool reasonSubsumed(int ref) const {
        const int sz = clauseSize(ref);
        const int* lits = clauseLits(ref);
        for (int t = 1; t < sz; ++t) {
            const auto v = static_cast<std::size_t>(litVar(lits[t]));
            if (!seen_[v] && level_[v] != 0) return false;
        }
        return true;
    }

    void cancelUntil(int lvl) {
        if (decisionLevel() <= lvl) return;
        const auto bound = static_cast<std::size_t>(trailLim_[static_cast<std::size_t>(lvl)]);
        for (std::size_t c = trail_.size(); c-- > bound;) {
            const auto v = static_cast<std::size_t>(litVar(trail_[c]));
            phase_[v] = static_cast<signed char>(value_[v]);
            value_[v] = kUndef;
            order_.push({activity_[v], static_cast<int>(v)});
        }
        trail_.resize(bound);
        qhead_ = bound;
        trailLim_.resize(static_cast<std::size_t>(lvl));
    }

    void bumpActivity(int v) {
        auto& a = activity_[static_cast<std::size_t>(v)];
        a += varInc_;
        if (a > 1e100) {
            for (auto& x : activity_) x *= 1e-100;
            varInc_ *= 1e-100;
        }
        if (value_[static_cast<std::size_t>(v)] == kUndef) order_.push({a, v});
    }

    // Lazily cleaned max-activity order; every unassigned variable always
    // has at least one (possibly stale-priority) entry.
    int pickBranchVar() {
        for (;;) {
            const int v = order_.top().second;
            order_.pop();
            if (value_[static_cast<std::size_t>(v)] == kUndef) return v;
        }
    }

    static std::uint64_t luby(std::uint64_t x) {
        std::uint64_t size = 1;
        std::uint64_t seq = 0;
        while (size < x + 1) {
            ++seq;
            size = 2 * size + 1;
        }
        while (size - 1 != x) {
            size = (size - 1) / 2;
            --seq;
            x %= size;
        }
        return std::uint64_t{1} << seq;
    }

    int nVars_;
    bool ok_ = true;
    std::vector<signed char> value_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<double> activity_;
    std::vector<signed char> phase_;
    std::vector<signed char> seen_;
    std::vector<int> levelStamp_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<int> arena_;
    std::vector<int> learnts_;
    std::vector<int> trail_;
    std::vector<int> trailLim_;
    std::size_t qhead_ = 0;
    double varInc_ = 1.0;
    int stamp_ = 0;
    std::uint64_t conflicts_ = 0;
    std::uint64_t reductions_ = 0;
    std::priority_queue<std::pair<double, int>> order_;
};

/// Single-index transversal decision via CNF: variable (v, i) says vertex v
/// picks index i; one at-least-one clause per vertex, one binary conflict
/// clause per (edge, index). A model with several true indices at a vertex
/// still yields a valid transversal by taking any one of them, so no
/// at-most-one clauses are needed. Throws GuardExceeded when the conflict
/// budget runs out before a decision is reached.
inline std::optional<std::vector<int>> decideTransversalCnf(
    const Cover& c, std::uint64_t maxConflicts = kMaxDecisionConflicts) {
    const int n = c.graph.n();
    const int k = c.k;
    CdclSolver s(n * k);
    std::vector<int> clause;
    clause.reserve(static_cast<std::size_t>(k));
    for (int v = 0; v < n; ++v) {
        clause.clear();
        for (int i = 0; i < k; ++i) clause.push_back(2 * (v * k + i));
        s.addClause(clause);
    }
    std::vector<int> pair(2);
    for (std::size_t j = 0; j < c.perms.size(); ++j) {
        const auto& [u, v] = c.graph.edges()[j];
        for (int i = 0; i < k; ++i) {
            pair[0] = 2 * (u * k + i) + 1;
            pair[1] = 2 * (v * k + c.perms[j][static_cast<std::size_t>(i)]) + 1;
            s.addClause(pair);
        }
    }
    const std::optional<bool> sat = s.solve(maxConflicts);
    if (!sat)
        throw GuardExceeded("cnf decision: conflict budget exceeded");
    if (!*sat) return std::nullopt;
    std::vector<int> choice(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < k; ++i)
            if (s.modelValue(v * k + i)) {
                choice[static_cast<std::size_t>(v)] = i;
                break;
            }
    return choice;
}

} // namespace dpcover::detail

#endif // DPCOVER_CDCL_HPP
