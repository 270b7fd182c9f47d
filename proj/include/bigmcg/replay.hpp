#pragma once

#include "bigmcg/end_action.hpp"
#include "bigmcg/generators.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bigmcg {

/// Predicate on the number of ends, used for script applicability and for
/// case splits inside a script.
struct EndsPredicate {
    std::optional<int> min_n, max_n, exact_n, not_n;

    bool holds(int n) const;
    std::string str() const;
    static EndsPredicate from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

enum class StepKind { Define, Conjugate, Product, Image, Relation, Agreement, Involution, Closure, Orbit, Include, Note };

std::string_view step_kind_name(StepKind k);

/// (input curve, claimed image curve), as text; `{n}` and `{n+k}` expand at
/// run time.
using ImagePair = std::pair<std::string, std::string>;

/// One reading of an ambiguous claim. `word`, when set, replaces the step's
/// conjugating word for this reading.
struct ImageReading {
    std::string label;
    std::vector<ImagePair> images;
    std::string word;
};

/// One checkable step. Which fields are used depends on `kind`:
///   define      name, word
///   conjugate   name, base, conj_by, images | alternatives, word (claim)
///   product     name, factors, word (claim)
///   image       word, images | alternatives
///   relation    left, right            (exact, total)
///   agreement   left, right            (exact on the common window)
///   involution  word, [name], [conj_by with images | alternatives]
///   closure     generators
///   orbit       curve, generators, family
///   include     script
///   note        cite only
struct DerivationStep {
    StepKind kind = StepKind::Note;
    std::string name, word, base, conj_by, left, right, script, curve, family, cite;
    std::vector<std::string> factors, generators;
    std::vector<ImagePair> images;
    std::vector<ImageReading> alternatives;
    EndsPredicate when;

    static DerivationStep from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Element expected to be available, with the same matrix as `word`, once
/// the script has run.
struct ScriptTarget {
    std::string name, word;
};

struct DerivationScript {
    std::string id, title;
    EndsPredicate applies_to;  // "requires" in the file format
    std::vector<DerivationStep> steps;
    std::vector<ScriptTarget> targets;

    static DerivationScript from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

class ScriptLibrary {
public:
    /// Scripts compiled into the library from scripts/*.json.
    static const ScriptLibrary& builtin();
    static ScriptLibrary from_directory(const std::filesystem::path& dir);

    void add(DerivationScript script);
    bool contains(const std::string& id) const { return scripts_.count(id) != 0; }
    /// Throws UnknownName.
    const DerivationScript& get(const std::string& id) const;
    /// Ids in canonical order (lemmas first, then main-*).
    std::vector<std::string> ids() const;
    void write_directory(const std::filesystem::path& dir) const;

private:
    std::map<std::string, DerivationScript> scripts_;
};

/// Canonical run order of the built-in script ids.
const std::vector<std::string>& builtin_script_order();

/// Result of one primitive check.
struct StepOutcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> warnings;
    int window_columns = 0;
    int window_total = 0;
    std::set<Slot> touched;
    std::set<Slot> excluded;
};

struct StepReport {
    int index = 0;
    std::string script, kind, name, cite;
    std::string status;  // pass | fail | error | skipped
    std::string detail;
    std::vector<std::string> warnings;
    int window_columns = 0;
    int window_total = 0;

    nlohmann::json to_json() const;
    static StepReport from_json(const nlohmann::json& j);
    friend bool operator==(const StepReport&, const StepReport&) = default;
};

struct VerificationReport {
    std::string script;
    int ends = 0;
    int depth = 0;
    bool pass = false;
    std::vector<StepReport> steps;
    std::vector<std::string> warnings;
    std::vector<std::string> window_slots;    // slots carrying weight in image checks
    std::vector<std::string> excluded_slots;  // slots outside some partial action's domain
    std::map<std::string, std::string> elements;

    nlohmann::json to_json() const;
    static VerificationReport from_json(const nlohmann::json& j);
    std::string text(bool verbose = false) const;
    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

using CurvePair = std::pair<CurveName, CurveName>;

/// Replays derivation scripts against a homology engine.
class ProofChecker {
public:
    ProofChecker(const HomologyEngine& engine, const ScriptLibrary& library);

    const HomologyEngine& engine() const { return engine_; }

    /// Throws ScriptNotApplicable when the script's predicate rejects n.
    /// Errors inside steps abort the run and come back as a partial report.
    VerificationReport run_script(const std::string& id) const;

    /// Passes iff evaluate(w, [in]) = +-[out] for every pair.
    StepOutcome verify_image_claim(const MappingWord& w, const std::vector<CurvePair>& pairs) const;
    /// Image claims for f, then matrix(f base f^-1) = matrix(claimed) on the
    /// evaluable window (sign-only agreement is reported as a warning).
    StepOutcome verify_conjugation_step(const MappingWord& base, const MappingWord& f,
                                        const std::vector<CurvePair>& pairs, const MappingWord& claimed) const;
    StepOutcome verify_product(const MappingWord& product, const MappingWord& claimed) const;
    /// Exact matrix identity; both sides must be total.
    StepOutcome verify_relation(const MappingWord& left, const MappingWord& right) const;
    /// Exact agreement on the columns where both sides are defined.
    StepOutcome verify_agreement(const MappingWord& left, const MappingWord& right) const;
    /// w*w acts trivially on homology (window-restricted) and on ends.
    StepOutcome verify_involution(const MappingWord& w) const;
    StepOutcome verify_closure(const std::vector<MappingWord>& generators) const;
    /// Every unprimed curve of `family` is reached from `start` by words in
    /// the generators and their inverses.
    StepOutcome verify_orbit(const CurveName& start, const std::vector<MappingWord>& generators,
                             Family family) const;

private:
    struct RunState;
    void run_into(const std::string& id, RunState& state, int depth) const;
    StepOutcome execute(const DerivationStep& step, RunState& state, int depth) const;
    StepOutcome compare_on_window(const ActionMatrix& got, const ActionMatrix& want, bool allow_sign,
                                  const std::string& what) const;

    const HomologyEngine& engine_;
    const ScriptLibrary& library_;
};

/// Convenience wrapper building the engine around `atlas`.
VerificationReport run_script(const std::string& id, const CurveAtlas& atlas,
                              const ScriptLibrary& library = ScriptLibrary::builtin());

/// Expands `{n}`, `{n+k}`, `{n-k}` placeholders.
std::string expand_template(std::string_view text, int n);

}  // namespace bigmcg
