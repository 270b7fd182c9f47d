#include "bigmcg/replay.hpp"

#include "bigmcg/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace bigmcg {

namespace detail {
// Generated from scripts/*.json at build time.
const std::vector<std::string_view>& embedded_scripts();
}  // namespace detail

const ScriptLibrary& ScriptLibrary::builtin() {
    static const ScriptLibrary lib = [] {
        ScriptLibrary out;
        for (auto text : detail::embedded_scripts()) {
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(text);
            } catch (const nlohmann::json::exception& e) {
                throw MalformedScript(std::string("built-in script: ") + e.what());
            }
            out.add(DerivationScript::from_json(doc));
        }
        return out;
    }();
    return lib;
}

namespace {

constexpr int kMaxIncludeDepth = 8;
constexpr std::size_t kMaxOrbitStates = 200000;

std::string column_label(const SurfaceConfig& cfg, int col) {
    Slot s = slot_at(cfg, col / 2);
    return (col % 2 == 0 ? CurveName::a(s.arm, s.index) : CurveName::b(s.arm, s.index)).str();
}

bool is_basis_column(const ActionMatrix& m, int col) {
    for (int r = 0; r < m.dimension(); ++r)
        if (m.at(r, col) != (r == col ? 1 : 0)) return false;
    return true;
}

void note_moved(const ActionMatrix& m, StepOutcome& out) {
    const auto& cfg = m.config();
    for (int c = 0; c < m.dimension(); ++c)
        if (m.defined(c) && !is_basis_column(m, c)) out.touched.insert(slot_at(cfg, c / 2));
    for (Slot s : m.undefined_slots()) out.excluded.insert(s);
}

void note_support(const HomologyClass& x, StepOutcome& out) {
    for (Slot s : x.support()) out.touched.insert(s);
}

void merge(StepOutcome& into, StepOutcome from) {
    if (!from.pass) into.pass = false;
    if (!from.detail.empty()) into.detail += (into.detail.empty() ? "" : "; ") + from.detail;
    for (auto& w : from.warnings)
        if (std::find(into.warnings.begin(), into.warnings.end(), w) == into.warnings.end())
            into.warnings.push_back(std::move(w));
    into.window_columns += from.window_columns;
    into.window_total += from.window_total;
    into.touched.insert(from.touched.begin(), from.touched.end());
    into.excluded.insert(from.excluded.begin(), from.excluded.end());
}

bool contains_kind(const MappingWord& w, GeneratorToken::Kind k) {
    return std::any_of(w.tokens().begin(), w.tokens().end(), [k](const auto& t) { return t.kind == k; });
}

HomologyClass sign_normalized(HomologyClass x) {
    for (auto v : x.coeffs())
        if (v != 0) return v < 0 ? -x : x;
    return x;
}

Family parse_family(const std::string& tag) {
    for (Family f : {Family::A, Family::B, Family::C, Family::C0, Family::D})
        if (family_tag(f) == tag) return f;
    throw MalformedScript("unknown curve family '" + tag + "'");
}

std::string perm_label(const EndPermutation& p) { return p.str(); }

}  // namespace

struct ProofChecker::RunState {
    int n = 0;
    WordEnvironment env;
    std::map<std::string, std::string> elements;
    std::vector<StepReport> steps;
    std::vector<std::string> warnings;
    std::set<Slot> touched, excluded;
    std::vector<std::string> active;
    bool aborted = false;

    void warn(const std::string& w) {
        if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
    }
};

ProofChecker::ProofChecker(const HomologyEngine& engine, const ScriptLibrary& library)
    : engine_(engine), library_(library) {}

// ------------------------------------------------------------ primitives

StepOutcome ProofChecker::verify_image_claim(const MappingWord& w, const std::vector<CurvePair>& pairs) const {
    StepOutcome out;
    for (const auto& [in, claimed] : pairs) {
        const HomologyClass& x = engine_.curve_class(in);
        const HomologyClass& want = engine_.curve_class(claimed);
        HomologyClass got = engine_.evaluate(w, x);
        note_support(x, out);
        note_support(got, out);
        if (!classes_equal_up_to_sign(got, want)) {
            out.pass = false;
            std::string word = w.empty() ? "id" : w.str();
            out.detail += (out.detail.empty() ? "" : "; ") + ("(" + word + ")(" + in.str() + ") = " + got.str() +
                                                             ", claimed " + claimed.str() + " = " + want.str());
        }
    }
    if (out.pass) out.detail = std::to_string(pairs.size()) + " image(s) verified up to sign";
    return out;
}

StepOutcome ProofChecker::compare_on_window(const ActionMatrix& got, const ActionMatrix& want, bool allow_sign,
                                            const std::string& what) const {
    StepOutcome out;
    const int dim = got.dimension();
    out.window_total = dim;
    std::vector<int> window;
    for (int c = 0; c < dim; ++c)
        if (got.defined(c) && want.defined(c)) window.push_back(c);
    out.window_columns = static_cast<int>(window.size());
    note_moved(got, out);
    note_moved(want, out);
    if (window.empty()) {
        out.pass = false;
        out.detail = what + ": no common evaluable window";
        return out;
    }
    auto first_diff = [&](int sign) -> std::optional<int> {
        for (int c : window)
            for (int r = 0; r < dim; ++r)
                if (got.at(r, c) != sign * want.at(r, c)) return c;
        return std::nullopt;
    };
    auto diff = first_diff(1);
    if (!diff) {
        out.detail = what + ": equal on " + std::to_string(window.size()) + "/" + std::to_string(dim) + " columns";
        return out;
    }
    if (allow_sign && !first_diff(-1)) {
        out.detail = what + ": equal up to sign on " + std::to_string(window.size()) + "/" + std::to_string(dim) +
                     " columns";
        out.warnings.push_back("sign-only match: " + what);
        return out;
    }
    out.pass = false;
    int c = *diff;
    out.detail = what + ": column " + column_label(got.config(), c) + " differs, got " + got.column(c).str() +
                 ", want " + want.column(c).str();
    return out;
}

StepOutcome ProofChecker::verify_conjugation_step(const MappingWord& base, const MappingWord& f,
                                                  const std::vector<CurvePair>& pairs,
                                                  const MappingWord& claimed) const {
    StepOutcome out;
    if (!pairs.empty()) out = verify_image_claim(f, pairs);
    ActionMatrix got = engine_.word_matrix(conjugate(base, f));
    ActionMatrix want = engine_.word_matrix(claimed);
    merge(out, compare_on_window(got, want, true, "matrix(f base f^-1) vs claim"));
    return out;
}

StepOutcome ProofChecker::verify_product(const MappingWord& product, const MappingWord& claimed) const {
    return compare_on_window(engine_.word_matrix(product), engine_.word_matrix(claimed), true,
                             "matrix(product) vs claim");
}

StepOutcome ProofChecker::verify_relation(const MappingWord& left, const MappingWord& right) const {
    ActionMatrix l = engine_.word_matrix(left);
    ActionMatrix r = engine_.word_matrix(right);
    for (const auto* side : {&l, &r}) {
        if (!side->is_total()) {
            std::string slots;
            for (Slot s : side->undefined_slots()) slots += (slots.empty() ? "" : " ") + s.str();
            throw OutOfWindow(std::string(side == &l ? "left" : "right") +
                              " side of relation is not total on the window; undefined at " + slots);
        }
    }
    StepOutcome out = compare_on_window(l, r, false, "relation");
    if (out.pass) out.detail = "exact matrix identity on all " + std::to_string(l.dimension()) + " columns";
    return out;
}

StepOutcome ProofChecker::verify_agreement(const MappingWord& left, const MappingWord& right) const {
    return compare_on_window(engine_.word_matrix(left), engine_.word_matrix(right), false, "agreement");
}

StepOutcome ProofChecker::verify_involution(const MappingWord& w) const {
    StepOutcome out;
    ActionMatrix sq = engine_.word_matrix(compose(w, w));
    const int dim = sq.dimension();
    out.window_total = dim;
    out.window_columns = sq.defined_count();
    note_moved(engine_.word_matrix(w), out);
    for (Slot s : sq.undefined_slots()) out.excluded.insert(s);
    if (out.window_columns == 0) {
        out.pass = false;
        out.detail = "w^2 has no evaluable column";
        return out;
    }
    for (int c = 0; c < dim; ++c) {
        if (!sq.defined(c) || is_basis_column(sq, c)) continue;
        out.pass = false;
        out.detail = "not an involution on homology: w^2(" + column_label(sq.config(), c) + ") = " + sq.column(c).str();
        return out;
    }
    const int n = engine_.config().ends;
    EndPermutation p = perm_of(w, n);
    if (!(p * p).is_identity()) {
        out.pass = false;
        out.detail = "not an involution on ends: pi(w) = " + perm_label(p);
        return out;
    }
    out.detail = "w^2 = id on " + std::to_string(out.window_columns) + "/" + std::to_string(dim) +
                 " columns, pi(w) = " + perm_label(p);
    return out;
}

StepOutcome ProofChecker::verify_closure(const std::vector<MappingWord>& generators) const {
    StepOutcome out;
    const int n = engine_.config().ends;
    std::vector<EndPermutation> perms;
    bool uses_rho = false;
    std::string listing;
    for (const auto& g : generators) {
        perms.push_back(perm_of(g, n));
        listing += (listing.empty() ? "" : ", ") + perms.back().str();
        uses_rho = uses_rho || contains_kind(g, GeneratorToken::Kind::Rho1) || contains_kind(g, GeneratorToken::Kind::Rho2);
    }
    SubgroupClosure closure(n, perms);
    const auto full = SubgroupClosure::factorial(n);
    out.pass = closure.order() == full;
    out.detail = "images " + listing + " generate a subgroup of order " + std::to_string(closure.order()) +
                 (out.pass ? " = " : " != ") + std::to_string(n) + "! = " + std::to_string(full);
    if (uses_rho) out.warnings.push_back("end images of rho1, rho2 are convention-derived");
    return out;
}

StepOutcome ProofChecker::verify_orbit(const CurveName& start, const std::vector<MappingWord>& generators,
                                       Family family) const {
    StepOutcome out;
    std::vector<MappingWord> moves;
    for (const auto& g : generators) {
        moves.push_back(g);
        moves.push_back(invert(g));
    }
    std::set<HomologyClass, bool (*)(const HomologyClass&, const HomologyClass&)> seen(
        [](const HomologyClass& x, const HomologyClass& y) {
            return std::lexicographical_compare(x.coeffs().begin(), x.coeffs().end(), y.coeffs().begin(),
                                                y.coeffs().end());
        });
    std::deque<HomologyClass> queue;
    HomologyClass s = sign_normalized(engine_.curve_class(start));
    seen.insert(s);
    queue.push_back(s);
    while (!queue.empty()) {
        HomologyClass x = std::move(queue.front());
        queue.pop_front();
        for (const auto& m : moves) {
            HomologyClass y;
            try {
                y = sign_normalized(engine_.evaluate(m, x));
            } catch (const OutOfWindow&) {
                continue;
            } catch (const ArithmeticOverflow&) {
                continue;
            }
            if (seen.insert(y).second) {
                if (seen.size() > kMaxOrbitStates) {
                    out.pass = false;
                    out.detail = "orbit search exceeded " + std::to_string(kMaxOrbitStates) + " classes";
                    return out;
                }
                queue.push_back(std::move(y));
            }
        }
    }
    int reached = 0;
    std::string missing;
    auto targets = engine_.atlas().family(family, false);
    for (const auto& c : targets) {
        if (seen.count(sign_normalized(engine_.curve_class(c)))) {
            ++reached;
            note_support(engine_.curve_class(c), out);
        } else {
            missing += (missing.empty() ? "" : " ") + c.str();
        }
    }
    out.pass = reached == static_cast<int>(targets.size());
    out.detail = "orbit of " + start.str() + " reaches " + std::to_string(reached) + "/" +
                 std::to_string(targets.size()) + " curves of family " + std::string(family_tag(family)) +
                 (missing.empty() ? "" : "; missing " + missing);
    return out;
}

// ------------------------------------------------------------------ replay

StepOutcome ProofChecker::execute(const DerivationStep& step, RunState& state, int depth) const {
    (void)depth;
    const int n = state.n;
    bool uses_tau2 = false;
    auto word = [&](const std::string& text) {
        MappingWord w = parse_word(expand_template(text, n), &state.env);
        uses_tau2 = uses_tau2 || contains_kind(w, GeneratorToken::Kind::Tau2);
        return w;
    };
    auto curve = [&](const std::string& text) {
        CurveName c = CurveName::parse(expand_template(text, n));
        if (!engine_.atlas().contains(c)) throw UnknownCurve("curve " + c.str() + " is not in the atlas");
        return c;
    };
    auto pairs = [&](const std::vector<ImagePair>& images) {
        std::vector<CurvePair> out;
        for (const auto& [in, claimed] : images) out.emplace_back(curve(in), curve(claimed));
        return out;
    };
    auto bind = [&](const std::string& name, const MappingWord& w, const std::string& text) {
        if (is_reserved_name(name)) throw MalformedScript("'" + name + "' is a reserved name");
        if (state.env.count(name)) throw MalformedScript("element '" + name + "' is defined twice");
        state.env[name] = w;
        state.elements[name] = expand_template(text, n);
    };
    // Each reading is checked in full; the step passes when at least one holds.
    auto readings = [&](const std::string& default_word, const std::vector<ImageReading>& alternatives,
                        const auto& check) {
        StepOutcome out;
        out.pass = false;
        std::string verified, rejected;
        for (const auto& r : alternatives) {
            MappingWord f = word(r.word.empty() ? default_word : r.word);
            StepOutcome o = check(f, pairs(r.images));
            std::string& list = o.pass ? verified : rejected;
            list += (list.empty() ? "" : ", ") + r.label;
            out.touched.insert(o.touched.begin(), o.touched.end());
            out.excluded.insert(o.excluded.begin(), o.excluded.end());
            out.window_columns = std::max(out.window_columns, o.window_columns);
            out.window_total = std::max(out.window_total, o.window_total);
            if (o.pass) out.pass = true;
            if (!o.pass) out.detail += (out.detail.empty() ? "" : "; ") + r.label + ": " + o.detail;
        }
        std::string summary = "verified " + (verified.empty() ? std::string("none") : verified) + ", rejected " +
                              (rejected.empty() ? std::string("none") : rejected);
        out.detail = "alternative readings " + summary + (out.detail.empty() ? "" : "; " + out.detail);
        out.warnings.push_back("alternative readings: " + summary);
        return out;
    };
    auto image_check = [&](const MappingWord& f, const std::vector<CurvePair>& p) { return verify_image_claim(f, p); };

    StepOutcome out;
    switch (step.kind) {
        case StepKind::Define: {
            MappingWord w = word(step.word);
            bind(step.name, w, step.word);
            out.detail = step.name + " := " + (w.empty() ? "id" : expand_template(step.word, n));
            break;
        }
        case StepKind::Conjugate: {
            MappingWord base = word(step.base), claimed = word(step.word);
            if (step.alternatives.empty()) {
                out = verify_conjugation_step(base, word(step.conj_by), pairs(step.images), claimed);
            } else {
                out = readings(step.conj_by, step.alternatives,
                               [&](const MappingWord& f, const std::vector<CurvePair>& p) {
                                   return verify_conjugation_step(base, f, p, claimed);
                               });
            }
            bind(step.name, claimed, step.word);
            break;
        }
        case StepKind::Product: {
            MappingWord product;
            for (const auto& factor : step.factors) product = compose(product, word(factor));
            MappingWord claimed = word(step.word);
            out = verify_product(product, claimed);
            bind(step.name, claimed, step.word);
            break;
        }
        case StepKind::Image: {
            MappingWord w = word(step.word);
            if (!step.images.empty()) out = verify_image_claim(w, pairs(step.images));
            if (!step.alternatives.empty()) merge(out, readings(step.word, step.alternatives, image_check));
            break;
        }
        case StepKind::Relation: out = verify_relation(word(step.left), word(step.right)); break;
        case StepKind::Agreement: out = verify_agreement(word(step.left), word(step.right)); break;
        case StepKind::Involution: {
            MappingWord w = word(step.word);
            out = verify_involution(w);
            if (!step.conj_by.empty()) {
                MappingWord f = word(step.conj_by);
                if (!step.images.empty()) {
                    StepOutcome pre = verify_image_claim(f, pairs(step.images));
                    pre.detail = "precondition: " + pre.detail;
                    merge(out, std::move(pre));
                }
                if (!step.alternatives.empty()) merge(out, readings(step.conj_by, step.alternatives, image_check));
            }
            if (!step.name.empty()) bind(step.name, w, step.word);
            break;
        }
        case StepKind::Closure: {
            std::vector<MappingWord> gens;
            for (const auto& g : step.generators) gens.push_back(word(g));
            out = verify_closure(gens);
            break;
        }
        case StepKind::Orbit: {
            std::vector<MappingWord> gens;
            for (const auto& g : step.generators) gens.push_back(word(g));
            out = verify_orbit(curve(step.curve), gens, parse_family(step.family));
            break;
        }
        case StepKind::Note:
            out.detail = "recorded";
            out.warnings.push_back(step.cite);
            break;
        case StepKind::Include: throw MalformedScript("include handled by the runner");
    }
    if (uses_tau2)
        out.warnings.push_back("tau2 fixes slot 2:" + std::to_string(engine_.config().depth) +
                               " as a truncation artefact");
    return out;
}

void ProofChecker::run_into(const std::string& id, RunState& state, int depth) const {
    if (depth > kMaxIncludeDepth) throw MalformedScript("include nesting deeper than " + std::to_string(kMaxIncludeDepth));
    if (std::find(state.active.begin(), state.active.end(), id) != state.active.end())
        throw MalformedScript("script '" + id + "' includes itself");
    const DerivationScript& script = library_.get(id);
    if (!script.applies_to.holds(state.n))
        throw ScriptNotApplicable("script " + id + " requires " + script.applies_to.str() + "; got n = " +
                                  std::to_string(state.n));
    state.active.push_back(id);

    auto record = [&](StepReport r, const StepOutcome& o) {
        r.detail = o.detail;
        r.warnings = o.warnings;
        r.window_columns = o.window_columns;
        r.window_total = o.window_total;
        for (const auto& w : o.warnings) state.warn(w);
        state.touched.insert(o.touched.begin(), o.touched.end());
        state.excluded.insert(o.excluded.begin(), o.excluded.end());
        return r;
    };

    for (const auto& step : script.steps) {
        StepReport r;
        r.index = static_cast<int>(state.steps.size()) + 1;
        r.script = id;
        r.kind = std::string(step_kind_name(step.kind));
        r.name = step.kind == StepKind::Include ? step.script : step.name;
        r.cite = step.cite;
        if (!step.when.holds(state.n)) {
            r.status = "skipped";
            r.detail = "branch not taken (" + step.when.str() + ")";
            state.steps.push_back(std::move(r));
            continue;
        }
        if (step.kind == StepKind::Include) {
            std::size_t slot = state.steps.size();
            state.steps.push_back(r);
            WordEnvironment outer = std::move(state.env);
            state.env.clear();
            std::string error;
            try {
                run_into(step.script, state, depth + 1);
            } catch (const Error& e) {
                error = std::string(e.kind()) + ": " + e.what();
            }
            WordEnvironment inner = std::move(state.env);
            state.env = std::move(outer);
            if (!error.empty()) {
                state.steps[slot].status = "error";
                state.steps[slot].detail = error;
                state.aborted = true;
            }
            if (state.aborted) {
                if (state.steps[slot].status.empty()) {
                    state.steps[slot].status = "error";
                    state.steps[slot].detail = "included script aborted";
                }
                state.active.pop_back();
                return;
            }
            bool sub_pass = std::all_of(state.steps.begin() + static_cast<std::ptrdiff_t>(slot) + 1,
                                        state.steps.end(), [](const StepReport& s) {
                                            return s.status == "pass" || s.status == "skipped";
                                        });
            std::string imported;
            try {
                for (const auto& t : library_.get(step.script).targets) {
                    auto it = inner.find(t.name);
                    if (it == inner.end())
                        throw MalformedScript("script " + step.script + " does not define target " + t.name);
                    if (state.env.count(t.name) && !(state.env[t.name] == it->second))
                        throw MalformedScript("imported element '" + t.name + "' collides with an existing one");
                    state.env[t.name] = it->second;
                    imported += (imported.empty() ? "" : ", ") + t.name;
                }
            } catch (const Error& e) {
                state.steps[slot].status = "error";
                state.steps[slot].detail = std::string(e.kind()) + ": " + e.what();
                state.aborted = true;
                state.active.pop_back();
                return;
            }
            state.steps[slot].status = sub_pass ? "pass" : "fail";
            state.steps[slot].detail = "imported " + (imported.empty() ? std::string("nothing") : imported);
            continue;
        }
        try {
            StepOutcome o = execute(step, state, depth);
            r = record(std::move(r), o);
            r.status = o.pass ? "pass" : "fail";
            state.steps.push_back(std::move(r));
        } catch (const Error& e) {
            r.status = "error";
            r.detail = std::string(e.kind()) + ": " + e.what();
            state.steps.push_back(std::move(r));
            state.aborted = true;
            state.active.pop_back();
            return;
        }
    }

    for (const auto& t : script.targets) {
        StepReport r;
        r.index = static_cast<int>(state.steps.size()) + 1;
        r.script = id;
        r.kind = "target";
        r.name = t.name;
        r.cite = expand_template(t.word, state.n);
        try {
            auto it = state.env.find(t.name);
            if (it == state.env.end()) throw MalformedScript("target " + t.name + " was never produced");
            MappingWord want = parse_word(expand_template(t.word, state.n), &state.env);
            StepOutcome o = compare_on_window(engine_.word_matrix(it->second), engine_.word_matrix(want), false,
                                              "target " + t.name);
            r = record(std::move(r), o);
            r.status = o.pass ? "pass" : "fail";
            state.steps.push_back(std::move(r));
        } catch (const Error& e) {
            r.status = "error";
            r.detail = std::string(e.kind()) + ": " + e.what();
            state.steps.push_back(std::move(r));
            state.aborted = true;
            state.active.pop_back();
            return;
        }
    }
    state.active.pop_back();
}

VerificationReport ProofChecker::run_script(const std::string& id) const {
    RunState state;
    state.n = engine_.config().ends;
    run_into(id, state, 0);

    VerificationReport report;
    report.script = id;
    report.ends = state.n;
    report.depth = engine_.config().depth;
    report.pass = !state.aborted && std::all_of(state.steps.begin(), state.steps.end(), [](const StepReport& s) {
        return s.status == "pass" || s.status == "skipped";
    });
    report.steps = std::move(state.steps);
    report.warnings = std::move(state.warnings);
    for (Slot s : state.touched) report.window_slots.push_back(s.str());
    for (Slot s : state.excluded) report.excluded_slots.push_back(s.str());
    report.elements = std::move(state.elements);
    return report;
}

VerificationReport run_script(const std::string& id, const CurveAtlas& atlas, const ScriptLibrary& library) {
    HomologyEngine engine(atlas);
    return ProofChecker(engine, library).run_script(id);
}

}  // namespace bigmcg
