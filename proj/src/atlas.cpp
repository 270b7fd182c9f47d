#include "bigmcg/atlas.hpp"

#include "bigmcg/actions.hpp"
#include "bigmcg/errors.hpp"

#include <set>

namespace bigmcg {

using nlohmann::json;

const HomologyClass& CurveAtlas::homology(const CurveName& name) const {
    auto it = classes_.find(name);
    if (it == classes_.end()) throw UnknownCurve("curve " + name.str() + " is not in the atlas");
    return it->second;
}

std::vector<CurveName> CurveAtlas::family(Family f, bool primed) const {
    std::vector<CurveName> out;
    for (const auto& [name, cls] : classes_)
        if (name.family == f && name.primed == primed) out.push_back(name);
    return out;
}

int CurveAtlas::intersection(const CurveName& x, const CurveName& y) const {
    if (!contains(x)) throw UnknownCurve("curve " + x.str() + " is not in the atlas");
    if (!contains(y)) throw UnknownCurve("curve " + y.str() + " is not in the atlas");
    if (x == y) return 0;
    auto key = x < y ? std::pair{x, y} : std::pair{y, x};
    if (auto it = overrides_.find(key); it != overrides_.end()) return it->second;
    return chain_intersection(cfg_, x, y);
}

namespace {

int next_arm(const SurfaceConfig& cfg, int arm) { return arm % cfg.ends + 1; }

// Intersection of a chain curve (c or c0) with an a/b curve.
int chain_vs_handle(const SurfaceConfig& cfg, const CurveName& c, const CurveName& h) {
    if (h.family != Family::B) return 0;
    if (c.family == Family::C0)
        return (h.index == 1 && (h.arm == c.arm || h.arm == next_arm(cfg, c.arm))) ? 1 : 0;
    return (h.arm == c.arm && (h.index == c.index || h.index == c.index + 1)) ? 1 : 0;
}

bool is_chain(const CurveName& n) { return n.family == Family::C || n.family == Family::C0; }
bool is_handle(const CurveName& n) { return n.family == Family::A || n.family == Family::B; }

}  // namespace

int chain_intersection(const SurfaceConfig& cfg, const CurveName& x, const CurveName& y) {
    if (x == y) return 0;
    if (is_handle(x) && is_handle(y)) {
        bool dual = x.family != y.family && x.arm == y.arm && x.index == y.index;
        return dual ? 1 : 0;
    }
    if (is_chain(x) && is_handle(y)) return chain_vs_handle(cfg, x, y);
    if (is_chain(y) && is_handle(x)) return chain_vs_handle(cfg, y, x);
    return 0;
}

// ------------------------------------------------------------------ parsing

namespace {

Family parse_family(const std::string& tag) {
    if (tag == "a") return Family::A;
    if (tag == "b") return Family::B;
    if (tag == "c") return Family::C;
    if (tag == "c0") return Family::C0;
    if (tag == "d") return Family::D;
    throw MalformedAtlas("unknown curve family '" + tag + "'");
}

Coord parse_flag(const json& j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "a") return Coord::A;
        if (s == "b") return Coord::B;
    } else if (j.is_number_integer()) {
        auto v = j.get<int>();
        if (v == 0) return Coord::A;
        if (v == 1) return Coord::B;
    }
    throw MalformedAtlas("homology ab_flag must be \"a\"/\"b\" or 0/1, got " + j.dump());
}

CurveName parse_entry_name(const json& c) {
    CurveName name;
    name.family = parse_family(c.at("family").get<std::string>());
    name.primed = c.value("primed", false);
    name.index = c.at("index").get<int>();
    if (name.family == Family::D) {
        if (c.contains("arm") && !c.at("arm").is_null() && c.at("arm").get<int>() != kLanternArm)
            throw MalformedAtlas("d-curves live on arm " + std::to_string(kLanternArm));
        name.arm = 0;
    } else {
        name.arm = c.at("arm").get<int>();
    }
    if (!name.well_formed()) throw MalformedAtlas("ill-formed curve entry " + c.dump());
    return name;
}

CurveName parse_reference(const json& j, const SurfaceConfig& cfg) {
    CurveName name;
    try {
        name = CurveName::parse(j.get<std::string>());
    } catch (const SyntaxError& e) {
        throw MalformedAtlas(std::string("bad curve reference: ") + e.what());
    }
    name.check_window(cfg);
    return name;
}

void violation(const std::string& constraint, const CurveName& x, const CurveName& y,
               const std::string& detail) {
    throw InvariantViolation(constraint + " fails for (" + x.str() + ", " + y.str() + "): " + detail);
}

void validate(const CurveAtlas& atlas) {
    const auto& cfg = atlas.config();

    for (const auto& [name, cls] : atlas.curves()) {
        if (cls.is_zero()) throw InvariantViolation("class of " + name.str() + " is zero");
        if (!cls.is_primitive())
            throw InvariantViolation("class of " + name.str() + " = " + cls.str() + " is not primitive");
    }

    // Basis pairs must all be present and dual.
    for (int i = 1; i <= cfg.ends; ++i) {
        for (int j = 1; j <= cfg.depth; ++j) {
            CurveName a = CurveName::a(i, j), b = CurveName::b(i, j);
            if (!atlas.contains(a) || !atlas.contains(b))
                throw InvariantViolation("basis pair missing for (" + a.str() + ", " + b.str() + ")");
            auto p = atlas.homology(a).pair(atlas.homology(b));
            if (p != 1 && p != -1) violation("basis pairing <a,b> = +-1", a, b, "pairing is " + std::to_string(p));
            if (atlas.intersection(a, b) != 1)
                violation("basis intersection i(a,b) = 1", a, b,
                          "declared " + std::to_string(atlas.intersection(a, b)));
        }
    }

    std::vector<CurveName> names;
    for (const auto& entry : atlas.curves()) names.push_back(entry.first);
    for (std::size_t s = 0; s < names.size(); ++s) {
        for (std::size_t t = s + 1; t < names.size(); ++t) {
            const auto& x = names[s];
            const auto& y = names[t];
            int inter = atlas.intersection(x, y);
            if (inter < 0 || inter > 2)
                violation("intersection in {0,1,2}", x, y, "declared " + std::to_string(inter));
            if (inter == 0) {
                auto p = atlas.homology(x).pair(atlas.homology(y));
                if (p != 0)
                    violation("disjoint curves pair to zero", x, y, "pairing is " + std::to_string(p));
            }
        }
    }

    // Chain adjacency against every a/b curve on the chain curve's own arm.
    for (const auto& c : names) {
        if (!is_chain(c)) continue;
        for (const auto& h : names) {
            if (!is_handle(h) || h.arm != c.arm) continue;
            int expected = chain_vs_handle(cfg, c, h);
            int got = atlas.intersection(c, h);
            if (got != expected)
                violation("chain adjacency", c, h,
                          "expected " + std::to_string(expected) + ", declared " + std::to_string(got));
        }
    }

    // R-equivariance: R[alpha^i] = +-[alpha^{i+1}].
    SlotMap rot = rotation_map(cfg);
    for (const auto& [name, cls] : atlas.curves()) {
        if (name.family == Family::D) continue;
        CurveName target = name;
        target.arm = next_arm(cfg, name.arm);
        if (!atlas.contains(target)) continue;
        HomologyClass image = rot.apply(cls);
        if (!classes_equal_up_to_sign(image, atlas.homology(target)))
            violation("R-equivariance", name, target,
                      "R" + name.str() + " = " + image.str() + " but " + target.str() + " = " +
                          atlas.homology(target).str());
    }
}

}  // namespace

CurveAtlas build_atlas(const SurfaceConfig& cfg, const json& doc) {
    cfg.validate();
    CurveAtlas atlas;
    atlas.cfg_ = cfg;
    try {
        if (!doc.is_object()) throw MalformedAtlas("atlas document must be an object");
        if (doc.contains("config")) {
            SurfaceConfig declared{doc.at("config").at("ends").get<int>(), doc.at("config").at("depth").get<int>()};
            if (!(declared == cfg))
                throw MalformedAtlas("atlas is for ends=" + std::to_string(declared.ends) +
                                     " depth=" + std::to_string(declared.depth) + ", requested ends=" +
                                     std::to_string(cfg.ends) + " depth=" + std::to_string(cfg.depth));
        }
        for (const auto& c : doc.at("curves")) {
            CurveName name = parse_entry_name(c);
            name.check_window(cfg);
            HomologyClass cls(cfg);
            for (const auto& term : c.at("homology")) {
                if (!term.is_array() || term.size() != 4)
                    throw MalformedAtlas("homology term must be [arm, index, ab_flag, coeff]: " + term.dump());
                Slot s{term[0].get<int>(), term[1].get<int>()};
                if (s.arm < 1 || s.arm > cfg.ends || s.index < 1 || s.index > cfg.depth)
                    throw IndexOutOfWindow("homology of " + name.str() + " uses slot " + s.str() +
                                           " outside the window");
                cls.add_to(s, parse_flag(term[2]), term[3].get<std::int64_t>());
            }
            if (!atlas.classes_.emplace(name, std::move(cls)).second)
                throw MalformedAtlas("duplicate curve " + name.str());
        }
        if (doc.contains("intersections")) {
            for (const auto& e : doc.at("intersections")) {
                if (!e.is_array() || e.size() != 3)
                    throw MalformedAtlas("intersection entry must be [name, name, value]: " + e.dump());
                CurveName x = parse_reference(e[0], cfg);
                CurveName y = parse_reference(e[1], cfg);
                if (!atlas.contains(x) || !atlas.contains(y))
                    throw MalformedAtlas("intersection entry names an unlisted curve: " + e.dump());
                if (x == y) throw InvariantViolation("self-intersection declared for " + x.str());
                atlas.overrides_[x < y ? std::pair{x, y} : std::pair{y, x}] = e[2].get<int>();
            }
        }
    } catch (const json::exception& e) {
        throw MalformedAtlas(std::string("atlas syntax: ") + e.what());
    }
    validate(atlas);
    return atlas;
}

CurveAtlas build_atlas(const json& doc) {
    try {
        SurfaceConfig cfg{doc.at("config").at("ends").get<int>(), doc.at("config").at("depth").get<int>()};
        return build_atlas(cfg, doc);
    } catch (const json::exception& e) {
        throw MalformedAtlas(std::string("atlas config: ") + e.what());
    }
}

// ---------------------------------------------------------------- emitting

namespace {

json term(Slot s, Coord c, std::int64_t coeff) {
    return json::array({s.arm, s.index, c == Coord::A ? "a" : "b", coeff});
}

json entry(const CurveName& name, const HomologyClass& cls) {
    json c;
    c["family"] = std::string(family_tag(name.family));
    c["arm"] = name.family == Family::D ? json(nullptr) : json(name.arm);
    c["index"] = name.index;
    c["primed"] = name.primed;
    json h = json::array();
    for (Slot s : cls.support()) {
        if (auto v = cls.at(s, Coord::A)) h.push_back(term(s, Coord::A, v));
        if (auto v = cls.at(s, Coord::B)) h.push_back(term(s, Coord::B, v));
    }
    c["homology"] = std::move(h);
    return c;
}

}  // namespace

json CurveAtlas::to_json() const {
    json doc;
    doc["config"] = {{"ends", cfg_.ends}, {"depth", cfg_.depth}};
    json curves = json::array();
    for (const auto& [name, cls] : classes_) curves.push_back(entry(name, cls));
    doc["curves"] = std::move(curves);
    json inter = json::array();
    for (const auto& [key, value] : overrides_) inter.push_back(json::array({key.first.str(), key.second.str(), value}));
    doc["intersections"] = std::move(inter);
    return doc;
}

json default_atlas_json(const SurfaceConfig& cfg) {
    cfg.validate();
    const int n = cfg.ends, g = cfg.depth;
    json curves = json::array();
    auto add = [&](const CurveName& name, std::initializer_list<json> terms) {
        json c;
        c["family"] = std::string(family_tag(name.family));
        c["arm"] = name.family == Family::D ? json(nullptr) : json(name.arm);
        c["index"] = name.index;
        c["primed"] = name.primed;
        c["homology"] = json::array();
        for (const auto& t : terms) c["homology"].push_back(t);
        curves.push_back(std::move(c));
    };
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= g; ++j) {
            add(CurveName::a(i, j), {term({i, j}, Coord::A, 1)});
            add(CurveName::a_primed(i, j), {term({i, j}, Coord::A, 1)});
            add(CurveName::b(i, j), {term({i, j}, Coord::B, 1)});
        }
        for (int j = 1; j < g; ++j)
            add(CurveName::c(i, j), {term({i, j}, Coord::A, 1), term({i, j + 1}, Coord::A, -1)});
        add(CurveName::c0(i), {term({i, 1}, Coord::A, 1), term({i % n + 1, 1}, Coord::A, -1)});
    }
    // Lantern on arm 2 bounded by a_1, c_1, c_2, a_3.
    const int k = kLanternArm;
    add(CurveName::d(1), {term({k, 1}, Coord::A, 1), term({k, 2}, Coord::A, -1), term({k, 3}, Coord::A, 1)});
    add(CurveName::d(2), {term({k, 1}, Coord::A, 1), term({k, 3}, Coord::A, -1)});

    json inter = json::array();
    auto meet = [&](const CurveName& x, const CurveName& y, int v) {
        inter.push_back(json::array({x.str(), y.str(), v}));
    };
    for (int j : {1, 2, 3}) meet(CurveName::d(1), CurveName::b(k, j), 1);
    for (int j : {1, 3}) meet(CurveName::d(2), CurveName::b(k, j), 1);
    meet(CurveName::d(1), CurveName::d(2), 2);
    for (int dk : {1, 2}) {
        meet(CurveName::d(dk), CurveName::a(k, 2), 2);
        meet(CurveName::d(dk), CurveName::a_primed(k, 2), 2);
    }

    json doc;
    doc["config"] = {{"ends", n}, {"depth", g}};
    doc["curves"] = std::move(curves);
    doc["intersections"] = std::move(inter);
    return doc;
}

CurveAtlas default_atlas(const SurfaceConfig& cfg) { return build_atlas(cfg, default_atlas_json(cfg)); }

}  // namespace bigmcg
