#include "bigmcg/atlas.hpp"
#include "bigmcg/end_action.hpp"
#include "bigmcg/errors.hpp"
#include "bigmcg/generators.hpp"
#include "bigmcg/replay.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bigmcg;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
    std::string ends = "3";
    int depth = SurfaceConfig::kDefaultDepth;
    std::string atlas;
    std::vector<std::string> lemmas;
    bool all = false;
    bool json = false;
    bool verbose = false;
    int jobs = 0;
    std::string out;
    std::string word;
    std::string on;
    bool perm = false;
    std::vector<std::string> reports;
};

std::optional<fs::path> model_dir() {
    if (const char* dir = std::getenv("BIGMCG_MODEL_DIR"); dir && *dir) return fs::path(dir);
    return std::nullopt;
}

std::vector<int> parse_ends(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw ConfigError("--ends expects N or A..B, got '" + text + "'");
        return v;
    };
    std::vector<int> out;
    if (auto dots = text.find(".."); dots != std::string::npos) {
        int lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
        if (lo > hi) throw ConfigError("empty range --ends " + text);
        for (int n = lo; n <= hi; ++n) out.push_back(n);
    } else {
        out.push_back(number(text));
    }
    return out;
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw MalformedAtlas(path.string() + ": " + e.what());
    }
}

std::optional<fs::path> atlas_path(const Options& opt) {
    if (!opt.atlas.empty()) return fs::path(opt.atlas);
    if (auto dir = model_dir(); dir && fs::exists(*dir / "atlas.json")) return *dir / "atlas.json";
    return std::nullopt;
}

CurveAtlas load_atlas(const Options& opt, const SurfaceConfig& cfg) {
    cfg.validate();
    if (auto path = atlas_path(opt)) return build_atlas(cfg, read_json(*path));
    return default_atlas(cfg);
}

const ScriptLibrary& load_library() {
    static std::unique_ptr<ScriptLibrary> custom;
    if (auto dir = model_dir(); dir && fs::is_directory(*dir / "scripts")) {
        if (!custom) custom = std::make_unique<ScriptLibrary>(ScriptLibrary::from_directory(*dir / "scripts"));
        return *custom;
    }
    return ScriptLibrary::builtin();
}

int report_error(const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return kUsage;
}

// ---------------------------------------------------------------- init

int cmd_init(const Options& opt) {
    auto ends = parse_ends(opt.ends);
    if (ends.size() != 1) throw ConfigError("init takes a single --ends value");
    SurfaceConfig cfg{ends.front(), opt.depth};
    cfg.validate();
    fs::path out = !opt.out.empty() ? fs::path(opt.out) : model_dir().value_or(fs::path("model"));
    CurveAtlas atlas = default_atlas(cfg);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw ConfigError("cannot create " + out.string() + ": " + ec.message());
    std::ofstream file(out / "atlas.json");
    if (!file) throw ConfigError("cannot write " + (out / "atlas.json").string());
    file << atlas.to_json().dump(2) << '\n';
    file.close();
    ScriptLibrary::builtin().write_directory(out / "scripts");
    std::cout << "wrote " << (out / "atlas.json").string() << " (" << atlas.curves().size() << " curves, n=" << cfg.ends
              << ", g=" << cfg.depth << ") and " << ScriptLibrary::builtin().ids().size() << " scripts to "
              << (out / "scripts").string() << '\n';
    return kOk;
}

// -------------------------------------------------------------- verify

struct Job {
    std::string script;
    int ends = 0;
    VerificationReport report;
    std::string error;
};

int cmd_verify(const Options& opt) {
    if (opt.all == !opt.lemmas.empty()) throw ConfigError("verify needs exactly one of --lemma or --all");
    const ScriptLibrary& library = load_library();
    auto ends = parse_ends(opt.ends);

    std::map<int, std::unique_ptr<HomologyEngine>> engines;
    for (int n : ends) engines[n] = std::make_unique<HomologyEngine>(load_atlas(opt, SurfaceConfig{n, opt.depth}));

    std::vector<std::string> order = opt.all ? library.ids() : opt.lemmas;
    std::vector<Job> jobs;
    for (const auto& id : order) {
        const DerivationScript& script = library.get(id);
        for (int n : ends) {
            if (!script.applies_to.holds(n)) {
                if (opt.all) continue;
                throw ScriptNotApplicable("script " + id + " requires " + script.applies_to.str() + "; got n = " +
                                          std::to_string(n));
            }
            jobs.push_back({id, n, {}, {}});
        }
    }

    int workers = opt.jobs > 0 ? opt.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min<int>(workers, static_cast<int>(std::max<std::size_t>(1, jobs.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            Job& job = jobs[i];
            try {
                job.report = ProofChecker(*engines.at(job.ends), library).run_script(job.script);
            } catch (const Error& e) {
                job.error = std::string(e.kind()) + ": " + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    bool usage_error = false;
    bool all_pass = true;
    json out = json::array();
    for (const auto& job : jobs) {
        if (!job.error.empty()) {
            std::cerr << "error: " << job.script << " n=" << job.ends << ": " << job.error << '\n';
            usage_error = true;
            continue;
        }
        all_pass = all_pass && job.report.pass;
        if (opt.json) out.push_back(job.report.to_json());
        else std::cout << job.report.text(opt.verbose);
    }
    if (opt.json) {
        std::cout << out.dump(2) << '\n';
    } else {
        int passed = static_cast<int>(std::count_if(jobs.begin(), jobs.end(), [](const Job& j) {
            return j.error.empty() && j.report.pass;
        }));
        std::cout << passed << "/" << jobs.size() << " runs verified\n";
    }
    if (usage_error) return kUsage;
    return all_pass ? kOk : kFailed;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const Options& opt) {
    auto ends = parse_ends(opt.ends);
    if (ends.size() != 1) throw ConfigError("eval takes a single --ends value");
    HomologyEngine engine(load_atlas(opt, SurfaceConfig{ends.front(), opt.depth}));
    const int n = engine.config().ends;
    MappingWord w = parse_word(opt.word);
    for (const auto& t : w.tokens()) engine.validate(t);
    EndPermutation perm = perm_of(w, n);
    std::string shown = w.empty() ? "id" : w.str();

    if (!opt.on.empty()) {
        CurveName c = CurveName::parse(opt.on);
        HomologyClass image = engine.evaluate(w, c);
        std::string match;
        for (const auto& [name, cls] : engine.atlas().curves()) {
            if (classes_equal_up_to_sign(cls, image)) match += (match.empty() ? "" : " ") + name.str();
        }
        if (opt.json) {
            json j = {{"word", shown}, {"curve", c.str()}, {"image", image.str()},
                      {"coefficients", std::vector<std::int64_t>(image.coeffs().begin(), image.coeffs().end())},
                      {"matches", match}};
            if (opt.perm) j["permutation"] = perm.str();
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "(" << shown << ")(" << c.str() << ") = " << image.str() << '\n';
            if (!match.empty()) std::cout << "  = +-[" << match << "]\n";
            if (opt.perm) std::cout << "pi = " << perm.str() << '\n';
        }
        return kOk;
    }
    if (opt.perm) {
        if (opt.json) std::cout << json{{"word", shown}, {"permutation", perm.str()}}.dump(2) << '\n';
        else std::cout << "pi(" << shown << ") = " << perm.str() << '\n';
        return kOk;
    }
    ActionMatrix m = engine.word_matrix(w);
    if (opt.json) {
        json cols = json::array();
        for (int c = 0; c < m.dimension(); ++c) {
            if (!m.defined(c)) {
                cols.push_back(nullptr);
                continue;
            }
            HomologyClass col = m.column(c);
            cols.push_back(std::vector<std::int64_t>(col.coeffs().begin(), col.coeffs().end()));
        }
        std::cout << json{{"word", shown}, {"columns", cols}, {"permutation", perm.str()}}.dump(2) << '\n';
    } else {
        std::cout << "matrix of " << shown << " (n=" << n << ", g=" << engine.config().depth
                  << "; coordinates a,b per slot, arm-major)\n"
                  << m.grid() << "pi = " << perm.str() << '\n';
    }
    return kOk;
}

// -------------------------------------------------------------- report

int cmd_report(const Options& opt) {
    if (opt.reports.empty()) throw ConfigError("report needs at least one JSON report file");
    std::vector<VerificationReport> reports;
    for (const auto& file : opt.reports) {
        json doc;
        std::ifstream in(file);
        if (!in) throw ConfigError("cannot read " + file);
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw MalformedScript(file + ": " + e.what());
        }
        if (doc.is_array())
            for (const auto& r : doc) reports.push_back(VerificationReport::from_json(r));
        else
            reports.push_back(VerificationReport::from_json(doc));
    }
    bool all_pass = true;
    json out = json::array();
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        if (opt.json) out.push_back(r.to_json());
        else std::cout << r.text(opt.verbose);
    }
    if (opt.json) std::cout << out.dump(2) << '\n';
    return all_pass ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Homology-level replay of involution generating sets for big mapping class groups"};
    app.require_subcommand(1);
    Options opt;

    auto model_flags = [&](CLI::App* sub) {
        sub->add_option("--ends", opt.ends, "number of ends n, or a range A..B");
        sub->add_option("--depth", opt.depth, "handles per arm in the truncation window");
        sub->add_option("--atlas", opt.atlas, "atlas JSON file (default: built-in atlas)");
    };

    auto* init = app.add_subcommand("init", "write the default atlas and the bundled scripts");
    model_flags(init);
    init->add_option("--out", opt.out, "output directory (default: $BIGMCG_MODEL_DIR or ./model)");

    auto* verify = app.add_subcommand("verify", "replay derivation scripts");
    model_flags(verify);
    verify->add_option("--lemma", opt.lemmas, "script id (repeatable)");
    verify->add_flag("--all", opt.all, "every script applicable to each n");
    verify->add_flag("--json", opt.json, "emit JSON reports");
    verify->add_flag("-v,--verbose", opt.verbose, "list passing steps too");
    verify->add_option("--jobs", opt.jobs, "parallel runs (default: hardware threads)");

    auto* eval = app.add_subcommand("eval", "evaluate a word on homology and on ends");
    model_flags(eval);
    eval->add_option("word", opt.word, "word, e.g. \"h[1]*A[1,1]\"; empty is the identity");
    eval->add_option("--on", opt.on, "curve to push forward, e.g. c0[1]");
    eval->add_flag("--perm", opt.perm, "print the end permutation");
    eval->add_flag("--json", opt.json, "emit JSON");

    auto* report = app.add_subcommand("report", "print saved JSON reports");
    report->add_option("files", opt.reports, "report files written by verify --json")->required();
    report->add_flag("--json", opt.json, "re-emit JSON");
    report->add_flag("-v,--verbose", opt.verbose, "list passing steps too");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*init) return cmd_init(opt);
        if (*verify) return cmd_verify(opt);
        if (*eval) return cmd_eval(opt);
        if (*report) return cmd_report(opt);
    } catch (const Error& e) {
        return report_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
