#include "bigmcg/generators.hpp"

#include "bigmcg/errors.hpp"

namespace bigmcg {

HomologyEngine::HomologyEngine(CurveAtlas atlas)
    : atlas_(std::move(atlas)),
      rho1_(rho1_map(config())),
      rho2_(rho2_map(config())),
      tau1_(tau1_map(config())),
      tau2_(tau2_map(config())),
      rho1_inv_(rho1_.inverse()),
      rho2_inv_(rho2_.inverse()),
      tau1_inv_(tau1_.inverse()),
      tau2_inv_(tau2_.inverse()) {
    for (int i = 1; i < config().ends; ++i) {
        SlotMap h = shift_map(config(), i);
        SlotMap hinv = h.inverse();
        shifts_.emplace(i, std::pair{std::move(h), std::move(hinv)});
    }
}

void HomologyEngine::validate(const GeneratorToken& t) const {
    using K = GeneratorToken::Kind;
    if (t.kind == K::Twist) {
        t.curve.check_window(config());
        curve_class(t.curve);
    } else if (t.kind == K::Shift && !shifts_.count(t.shift_arm)) {
        throw IndexOutOfWindow("handle shift h[" + std::to_string(t.shift_arm) + "] needs 1 <= i < ends=" +
                               std::to_string(config().ends));
    }
}

const SlotMap& HomologyEngine::slot_map(const GeneratorToken& t) const {
    using K = GeneratorToken::Kind;
    const bool fwd = t.sign > 0;
    switch (t.kind) {
        case K::Rho1: return fwd ? rho1_ : rho1_inv_;
        case K::Rho2: return fwd ? rho2_ : rho2_inv_;
        case K::Tau1: return fwd ? tau1_ : tau1_inv_;
        case K::Tau2: return fwd ? tau2_ : tau2_inv_;
        case K::Shift: {
            auto it = shifts_.find(t.shift_arm);
            if (it == shifts_.end()) validate(t);
            return fwd ? it->second.first : it->second.second;
        }
        case K::Twist: break;
    }
    throw DomainMismatch("twist tokens have no slot map");
}

HomologyClass HomologyEngine::apply(const GeneratorToken& t, const HomologyClass& x) const {
    if (t.kind == GeneratorToken::Kind::Twist) {
        if (!atlas_.contains(t.curve)) validate(t);
        return apply_transvection(curve_class(t.curve), x, t.sign);
    }
    return slot_map(t).apply(x);
}

ActionMatrix HomologyEngine::generator_matrix(const GeneratorToken& t) const {
    if (t.kind == GeneratorToken::Kind::Twist) {
        validate(t);
        return transvection(curve_class(t.curve), t.sign);
    }
    return slot_map(t).matrix();
}

HomologyClass HomologyEngine::evaluate(const MappingWord& w, const HomologyClass& x) const {
    HomologyClass cur = x;
    const auto& toks = w.tokens();
    for (std::size_t k = toks.size(); k-- > 0;) {
        try {
            cur = apply(toks[k], cur);
        } catch (const OutOfWindow& e) {
            std::string support;
            for (Slot s : cur.support()) support += (support.empty() ? "" : " ") + s.str();
            throw OutOfWindow("token #" + std::to_string(k) + " (" + toks[k].str() + ") leaves the window on " +
                              "intermediate support {" + support + "}: " + e.what());
        }
    }
    return cur;
}

ActionMatrix HomologyEngine::word_matrix(const MappingWord& w) const {
    for (const auto& t : w.tokens()) validate(t);
    ActionMatrix m = ActionMatrix::undefined(config());
    for (int j = 0; j < config().dimension(); ++j) {
        try {
            m.set_column(j, evaluate(w, HomologyClass::basis(config(), j)));
        } catch (const OutOfWindow&) {
        }
    }
    return m;
}

}  // namespace bigmcg
