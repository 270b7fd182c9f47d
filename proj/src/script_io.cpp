#include "bigmcg/errors.hpp"
#include "bigmcg/replay.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace bigmcg {

using nlohmann::json;

// --------------------------------------------------------------- predicates

bool EndsPredicate::holds(int n) const {
    if (min_n && n < *min_n) return false;
    if (max_n && n > *max_n) return false;
    if (exact_n && n != *exact_n) return false;
    if (not_n && n == *not_n) return false;
    return true;
}

std::string EndsPredicate::str() const {
    std::string out;
    auto add = [&](const std::string& s) { out += (out.empty() ? "" : ", ") + s; };
    if (exact_n) add("n = " + std::to_string(*exact_n));
    if (min_n) add("n >= " + std::to_string(*min_n));
    if (max_n) add("n <= " + std::to_string(*max_n));
    if (not_n) add("n != " + std::to_string(*not_n));
    return out.empty() ? "any n" : out;
}

EndsPredicate EndsPredicate::from_json(const json& j) {
    EndsPredicate p;
    if (j.is_null()) return p;
    if (!j.is_object()) throw MalformedScript("predicate must be an object: " + j.dump());
    for (const auto& [key, value] : j.items()) {
        if (key == "min_n") p.min_n = value.get<int>();
        else if (key == "max_n") p.max_n = value.get<int>();
        else if (key == "exact_n") p.exact_n = value.get<int>();
        else if (key == "not_n") p.not_n = value.get<int>();
        else throw MalformedScript("unknown predicate key '" + key + "'");
    }
    return p;
}

json EndsPredicate::to_json() const {
    json j = json::object();
    if (min_n) j["min_n"] = *min_n;
    if (max_n) j["max_n"] = *max_n;
    if (exact_n) j["exact_n"] = *exact_n;
    if (not_n) j["not_n"] = *not_n;
    return j;
}

// -------------------------------------------------------------------- steps

namespace {

constexpr std::pair<StepKind, std::string_view> kKinds[] = {
    {StepKind::Define, "define"},         {StepKind::Conjugate, "conjugate"}, {StepKind::Product, "product"},
    {StepKind::Image, "image"},           {StepKind::Relation, "relation"},   {StepKind::Agreement, "agreement"},
    {StepKind::Involution, "involution"}, {StepKind::Closure, "closure"},     {StepKind::Orbit, "orbit"},
    {StepKind::Include, "include"},       {StepKind::Note, "note"},
};

StepKind parse_kind(const std::string& s) {
    for (const auto& [k, name] : kKinds)
        if (name == s) return k;
    throw MalformedScript("unknown step kind '" + s + "'");
}

std::vector<ImagePair> parse_images(const json& j) {
    std::vector<ImagePair> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) throw MalformedScript("image entry must be [in, out]: " + p.dump());
        out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    return out;
}

json images_json(const std::vector<ImagePair>& images) {
    json arr = json::array();
    for (const auto& [in, out] : images) arr.push_back(json::array({in, out}));
    return arr;
}

void require(bool ok, const DerivationStep& s, const char* field) {
    if (!ok)
        throw MalformedScript(std::string(step_kind_name(s.kind)) + " step needs '" + field + "'" +
                              (s.cite.empty() ? "" : " (" + s.cite + ")"));
}

}  // namespace

std::string_view step_kind_name(StepKind k) {
    for (const auto& [kind, name] : kKinds)
        if (kind == k) return name;
    return "?";
}

DerivationStep DerivationStep::from_json(const json& j) {
    DerivationStep s;
    try {
        s.kind = parse_kind(j.at("kind").get<std::string>());
        auto str = [&](const char* key, std::string& dst) {
            if (j.contains(key)) dst = j.at(key).get<std::string>();
        };
        str("name", s.name);
        str("word", s.word);
        str("base", s.base);
        str("conj_by", s.conj_by);
        str("left", s.left);
        str("right", s.right);
        str("script", s.script);
        str("curve", s.curve);
        str("family", s.family);
        str("cite", s.cite);
        if (j.contains("factors")) s.factors = j.at("factors").get<std::vector<std::string>>();
        if (j.contains("generators")) s.generators = j.at("generators").get<std::vector<std::string>>();
        if (j.contains("images")) s.images = parse_images(j.at("images"));
        if (j.contains("alternatives"))
            for (const auto& a : j.at("alternatives"))
                s.alternatives.push_back({a.at("label").get<std::string>(), parse_images(a.at("images")),
                                          a.value("word", "")});
        if (j.contains("when")) s.when = EndsPredicate::from_json(j.at("when"));
    } catch (const json::exception& e) {
        throw MalformedScript(std::string("step syntax: ") + e.what() + " in " + j.dump());
    }
    switch (s.kind) {
        case StepKind::Define: require(!s.name.empty(), s, "name"); break;
        case StepKind::Conjugate:
            require(!s.name.empty(), s, "name");
            require(!s.base.empty(), s, "base");
            require(!s.conj_by.empty() || !s.alternatives.empty(), s, "conj_by");
            require(!s.word.empty(), s, "word");
            break;
        case StepKind::Product:
            require(!s.name.empty(), s, "name");
            require(!s.factors.empty(), s, "factors");
            require(!s.word.empty(), s, "word");
            break;
        case StepKind::Image: require(!s.images.empty() || !s.alternatives.empty(), s, "images"); break;
        case StepKind::Relation:
        case StepKind::Agreement:
            require(j.contains("left"), s, "left");
            require(j.contains("right"), s, "right");
            break;
        case StepKind::Involution: require(!s.word.empty(), s, "word"); break;
        case StepKind::Closure: require(!s.generators.empty(), s, "generators"); break;
        case StepKind::Orbit:
            require(!s.curve.empty(), s, "curve");
            require(!s.generators.empty(), s, "generators");
            require(!s.family.empty(), s, "family");
            break;
        case StepKind::Include: require(!s.script.empty(), s, "script"); break;
        case StepKind::Note: require(!s.cite.empty(), s, "cite"); break;
    }
    return s;
}

json DerivationStep::to_json() const {
    json j;
    j["kind"] = std::string(step_kind_name(kind));
    auto put = [&](const char* key, const std::string& v) {
        if (!v.empty()) j[key] = v;
    };
    put("name", name);
    put("word", word);
    put("base", base);
    put("conj_by", conj_by);
    if (kind == StepKind::Relation || kind == StepKind::Agreement) {
        j["left"] = left;
        j["right"] = right;
    }
    put("script", script);
    put("curve", curve);
    put("family", family);
    if (!factors.empty()) j["factors"] = factors;
    if (!generators.empty()) j["generators"] = generators;
    if (!images.empty()) j["images"] = images_json(images);
    if (!alternatives.empty()) {
        json arr = json::array();
        for (const auto& a : alternatives) {
            json r = {{"label", a.label}, {"images", images_json(a.images)}};
            if (!a.word.empty()) r["word"] = a.word;
            arr.push_back(std::move(r));
        }
        j["alternatives"] = std::move(arr);
    }
    if (auto w = when.to_json(); !w.empty()) j["when"] = w;
    put("cite", cite);
    return j;
}

DerivationScript DerivationScript::from_json(const json& j) {
    DerivationScript s;
    try {
        s.id = j.at("id").get<std::string>();
        s.title = j.value("title", "");
        if (j.contains("requires")) s.applies_to = EndsPredicate::from_json(j.at("requires"));
        for (const auto& step : j.at("steps")) s.steps.push_back(DerivationStep::from_json(step));
        if (j.contains("targets"))
            for (const auto& t : j.at("targets"))
                s.targets.push_back({t.at("name").get<std::string>(), t.at("word").get<std::string>()});
    } catch (const json::exception& e) {
        throw MalformedScript(std::string("script syntax: ") + e.what());
    }
    return s;
}

json DerivationScript::to_json() const {
    json j;
    j["id"] = id;
    if (!title.empty()) j["title"] = title;
    j["requires"] = applies_to.to_json();
    json steps_json = json::array();
    for (const auto& s : steps) steps_json.push_back(s.to_json());
    j["steps"] = std::move(steps_json);
    json t = json::array();
    for (const auto& target : targets) t.push_back({{"name", target.name}, {"word", target.word}});
    j["targets"] = std::move(t);
    return j;
}

// ------------------------------------------------------------------ library

const std::vector<std::string>& builtin_script_order() {
    static const std::vector<std::string> order = {"lem33", "lem44", "lemthm",  "lem4",   "lem5",
                                                   "lem6",  "main-n7", "main-n6", "main-n3"};
    return order;
}

void ScriptLibrary::add(DerivationScript script) {
    std::string id = script.id;
    scripts_[id] = std::move(script);
}

const DerivationScript& ScriptLibrary::get(const std::string& id) const {
    auto it = scripts_.find(id);
    if (it == scripts_.end()) throw UnknownName("no derivation script named '" + id + "'");
    return it->second;
}

std::vector<std::string> ScriptLibrary::ids() const {
    std::vector<std::string> out;
    for (const auto& id : builtin_script_order())
        if (contains(id)) out.push_back(id);
    for (const auto& [id, s] : scripts_)
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    return out;
}

ScriptLibrary ScriptLibrary::from_directory(const std::filesystem::path& dir) {
    ScriptLibrary lib;
    if (!std::filesystem::is_directory(dir)) throw ConfigError("script directory " + dir.string() + " not found");
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw MalformedScript(entry.path().string() + ": " + e.what());
        }
        lib.add(DerivationScript::from_json(doc));
    }
    return lib;
}

void ScriptLibrary::write_directory(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& [id, script] : scripts_) {
        std::ofstream out(dir / (id + ".json"));
        if (!out) throw ConfigError("cannot write " + (dir / (id + ".json")).string());
        out << script.to_json().dump(2) << '\n';
    }
}

std::string expand_template(std::string_view text, int n) {
    static const std::regex placeholder(R"(\{n(?:([+-])(\d+))?\})");
    std::string src(text);
    std::string out;
    auto begin = std::sregex_iterator(src.begin(), src.end(), placeholder);
    std::size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        out.append(src, last, static_cast<std::size_t>(m.position()) - last);
        int value = n;
        if (m[1].matched) {
            int k = std::stoi(m[2].str());
            value += m[1].str() == "+" ? k : -k;
        }
        out += std::to_string(value);
        last = static_cast<std::size_t>(m.position() + m.length());
    }
    out.append(src, last, std::string::npos);
    return out;
}

// ------------------------------------------------------------------ reports

json StepReport::to_json() const {
    json j;
    j["index"] = index;
    j["script"] = script;
    j["kind"] = kind;
    j["name"] = name;
    j["cite"] = cite;
    j["status"] = status;
    j["detail"] = detail;
    j["warnings"] = warnings;
    j["window"] = {{"columns", window_columns}, {"total", window_total}};
    return j;
}

StepReport StepReport::from_json(const json& j) {
    StepReport r;
    r.index = j.at("index").get<int>();
    r.script = j.at("script").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.cite = j.at("cite").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.detail = j.at("detail").get<std::string>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.window_columns = j.at("window").at("columns").get<int>();
    r.window_total = j.at("window").at("total").get<int>();
    return r;
}

json VerificationReport::to_json() const {
    json j;
    j["script"] = script;
    j["ends"] = ends;
    j["depth"] = depth;
    j["verdict"] = pass ? "pass" : "fail";
    json s = json::array();
    for (const auto& st : steps) s.push_back(st.to_json());
    j["steps"] = std::move(s);
    j["warnings"] = warnings;
    j["window"] = {{"ends", ends}, {"depth", depth}, {"slots_touched", window_slots}, {"excluded_slots", excluded_slots}};
    j["elements"] = elements;
    return j;
}

VerificationReport VerificationReport::from_json(const json& j) {
    VerificationReport r;
    try {
        r.script = j.at("script").get<std::string>();
        r.ends = j.at("ends").get<int>();
        r.depth = j.at("depth").get<int>();
        r.pass = j.at("verdict").get<std::string>() == "pass";
        for (const auto& s : j.at("steps")) r.steps.push_back(StepReport::from_json(s));
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        r.window_slots = j.at("window").at("slots_touched").get<std::vector<std::string>>();
        r.excluded_slots = j.at("window").at("excluded_slots").get<std::vector<std::string>>();
        r.elements = j.at("elements").get<std::map<std::string, std::string>>();
    } catch (const json::exception& e) {
        throw MalformedScript(std::string("report syntax: ") + e.what());
    }
    return r;
}

std::string VerificationReport::text(bool verbose) const {
    std::ostringstream os;
    int passed = 0, failed = 0, skipped = 0;
    for (const auto& s : steps) {
        if (s.status == "pass") ++passed;
        else if (s.status == "skipped") ++skipped;
        else ++failed;
    }
    os << script << "  n=" << ends << " g=" << depth << "  " << (pass ? "PASS" : "FAIL") << "  (" << passed
       << " passed, " << failed << " failed, " << skipped << " skipped)\n";
    for (const auto& s : steps) {
        bool show = verbose || (s.status != "pass" && s.status != "skipped");
        if (!show) continue;
        os << "  [" << s.index << "] " << (s.script == script ? "" : s.script + "/") << s.kind;
        if (!s.name.empty()) os << ' ' << s.name;
        os << "  " << s.status;
        if (s.window_total > 0) os << "  window " << s.window_columns << '/' << s.window_total;
        os << '\n';
        if (!s.cite.empty()) os << "      claim: " << s.cite << '\n';
        if (!s.detail.empty()) os << "      " << s.detail << '\n';
        for (const auto& w : s.warnings) os << "      warning: " << w << '\n';
    }
    os << "  window: ends=" << ends << " depth=" << depth << ", " << window_slots.size() << " slots touched";
    if (!excluded_slots.empty()) {
        os << ", outside partial domains:";
        for (const auto& e : excluded_slots) os << ' ' << e;
    }
    os << '\n';
    for (const auto& w : warnings) os << "  warning: " << w << '\n';
    return os.str();
}

}  // namespace bigmcg
