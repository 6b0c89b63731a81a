#include "tempera/tempera.h"

#include <cstring>
#include <string>

#include "jacquet.hpp"
#include "jordan.hpp"
#include "tempered.hpp"
#include "textio.hpp"

using namespace tempera;

struct tempera_ctx {
    SymbolTable tab;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_out(char** slot, const std::string& s) {
    if (slot) *slot = dup_string(s);
}

tempera_status status_of(errc kind) {
    switch (kind) {
        case errc::parse: return TEMPERA_ERR_PARSE;
        case errc::invalid: return TEMPERA_ERR_INVALID;
        case errc::domain: return TEMPERA_ERR_DOMAIN;
        case errc::limit: return TEMPERA_ERR_LIMIT;
        case errc::internal: return TEMPERA_ERR_INTERNAL;
    }
    return TEMPERA_ERR_INTERNAL;
}

template <typename F>
tempera_status guarded(char** err, F&& body) {
    try {
        return body();
    } catch (const error& e) {
        set_out(err, e.what());
        return status_of(e.kind());
    } catch (const nlohmann::json::exception& e) {
        set_out(err, e.what());
        return TEMPERA_ERR_PARSE;
    } catch (const std::exception& e) {
        set_out(err, e.what());
        return TEMPERA_ERR_INTERNAL;
    }
}

std::string joined(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += "; ";
        out += v[i];
    }
    return out;
}

std::string render_signed_delta(const SymbolTable& tab, const SignedDelta& d) {
    return std::string(d.sign > 0 ? "+" : "-") + "d(" + tab.gl(d.rho).id + "," +
           std::to_string(d.b) + ")";
}

}  // namespace

extern "C" {

const char* tempera_version(void) { return "0.1.0"; }

tempera_status tempera_ctx_new(const char* catalog_json, tempera_ctx** out, char** err) {
    if (!catalog_json || !out) {
        set_out(err, "null argument");
        return TEMPERA_ERR_INVALID;
    }
    return guarded(err, [&]() {
        auto ctx = new tempera_ctx{catalog_from_json(parse_json_text(catalog_json))};
        *out = ctx;
        return TEMPERA_OK;
    });
}

void tempera_ctx_free(tempera_ctx* ctx) { delete ctx; }

void tempera_str_free(char* s) { std::free(s); }

tempera_status tempera_mstar(const tempera_ctx* ctx, const char* expr, int as_json, char** out,
                             char** err) {
    return guarded(err, [&]() {
        RElement x;
        x.emplace(parse_multisegment(ctx->tab, expr), 1);
        RTensor t = M_star_pipeline(ctx->tab, x);
        set_out(out, as_json ? to_json(ctx->tab, t).dump(2) + "\n" : render(ctx->tab, t));
        return TEMPERA_OK;
    });
}

tempera_status tempera_mu_bound(const tempera_ctx* ctx, const char* chain_json, int filter,
                                long depth, long max_terms, int as_json, char** out,
                                char** err) {
    return guarded(err, [&]() {
        ConstructionChain chain = chain_from_json(ctx->tab, parse_json_text(chain_json));
        BoundOptions opts;
        if (max_terms > 0) opts.max_terms = static_cast<std::size_t>(max_terms);
        std::optional<std::size_t> d;
        if (depth >= 0) d = static_cast<std::size_t>(depth);
        RSElement e = mu_star_bound(ctx->tab, chain, d, opts);
        if (filter) e = jordan_filter(ctx->tab, e, replay(ctx->tab, chain, d));
        set_out(out, as_json ? to_json(ctx->tab, e).dump(2) + "\n" : render(ctx->tab, e));
        return TEMPERA_OK;
    });
}

tempera_status tempera_validate_chain(const tempera_ctx* ctx, const char* chain_json,
                                      int as_json, char** out, char** err) {
    return guarded(err, [&]() {
        ConstructionChain chain = chain_from_json(ctx->tab, parse_json_text(chain_json));
        AdmissibleTriple t = replay(ctx->tab, chain);
        set_out(out, as_json ? triple_to_json(ctx->tab, t).dump(2) + "\n"
                             : "ok\n" + triple_to_json(ctx->tab, t).dump(2) + "\n");
        return TEMPERA_OK;
    });
}

tempera_status tempera_validate_triple(const tempera_ctx* ctx, const char* triple_json,
                                       int as_json, char** out, char** err) {
    return guarded(err, [&]() {
        json j = parse_json_text(triple_json);
        std::string kind = j.value("kind", "tempered");
        std::vector<std::string> violations;
        if (kind == "admissible") {
            AdmissibleTriple t = triple_from_json(ctx->tab, j, violations);
            for (const std::string& v : validate_triple(ctx->tab, t)) violations.push_back(v);
        } else if (kind == "tempered") {
            TemperedTriple t = tempered_triple_from_json(ctx->tab, j, violations);
            for (const std::string& v : validate_tempered_triple(ctx->tab, t))
                violations.push_back(v);
        } else {
            fail(errc::parse, "kind must be \"admissible\" or \"tempered\"");
        }
        if (!violations.empty()) {
            set_out(err, joined(violations));
            return TEMPERA_ERR_INVALID;
        }
        set_out(out, as_json ? "{\"valid\":true}\n" : "ok\n");
        return TEMPERA_OK;
    });
}

tempera_status tempera_pi_delta(const tempera_ctx* ctx, const char* chain_json, const char* rho,
                                long b, int as_json, char** out, char** err) {
    return guarded(err, [&]() {
        ConstructionChain chain = chain_from_json(ctx->tab, parse_json_text(chain_json));
        AdmissibleTriple t = replay(ctx->tab, chain);
        GlId r = ctx->tab.require_gl(rho);
        PiDeltaCase c = pi_delta_case(ctx->tab, t, r, b);
        json j;
        std::string name;
        switch (c.kind) {
            case PiDeltaCase::Kind::Case1: name = "case1"; break;
            case PiDeltaCase::Kind::Case2a: name = "case2a"; break;
            case PiDeltaCase::Kind::Case2bI: name = "case2b-i"; break;
            case PiDeltaCase::Kind::Case2bII: name = "case2b-ii"; break;
        }
        j["case"] = name;
        std::string text = name;
        if (c.kind == PiDeltaCase::Kind::Case1 || c.kind == PiDeltaCase::Kind::Case2bI) {
            j["a"] = c.a;
            text += " a=" + std::to_string(c.a);
        }
        if (c.witness) {
            j["witness"] = render(ctx->tab, *c.witness);
            text += " witness=" + render(ctx->tab, *c.witness);
        } else if (c.kind == PiDeltaCase::Kind::Case2bI) {
            j["witness"] = "1";
            text += " witness=1";
        }
        if (c.kind == PiDeltaCase::Kind::Case2bI) {
            j["seg_a"] = c.seg_a ? render(ctx->tab, *c.seg_a) : "1";
            text += " seg_a=" + (c.seg_a ? render(ctx->tab, *c.seg_a) : "1");
        }
        if (c.kind == PiDeltaCase::Kind::Case2bII) {
            j["tau_label"] = c.tau_label;
            text += " tau_label=" + std::string(c.tau_label > 0 ? "+1" : "-1");
        }
        set_out(out, as_json ? j.dump(2) + "\n" : text + "\n");
        return TEMPERA_OK;
    });
}

tempera_status tempera_decompose(const tempera_ctx* ctx, const char* param_json, int as_json,
                                 char** out, char** err) {
    return guarded(err, [&]() {
        TemperedParam p = param_from_json(ctx->tab, parse_json_text(param_json));
        std::vector<DeltaSym> deltas;
        for (const SignedDelta& d : p.e_core.deltas) deltas.push_back(DeltaSym{d.rho, d.b});
        auto vectors = decompose_sign_vectors(ctx->tab, p.e_core.core, deltas);
        if (as_json) {
            json j = json::array();
            for (const auto& vec : vectors) {
                json row = json::array();
                for (const SignedDelta& d : vec)
                    row.push_back({{"rho", ctx->tab.gl(d.rho).id},
                                   {"b", d.b},
                                   {"sign", d.sign}});
                j.push_back(row);
            }
            set_out(out, j.dump(2) + "\n");
        } else {
            std::string text;
            for (const auto& vec : vectors) {
                text += "[";
                for (std::size_t i = 0; i < vec.size(); ++i) {
                    if (i) text += " ";
                    text += render_signed_delta(ctx->tab, vec[i]);
                }
                text += "]\n";
            }
            set_out(out, text);
        }
        return TEMPERA_OK;
    });
}

tempera_status tempera_deform(const tempera_ctx* ctx, const char* triple_json, const char* rho,
                              long a, long target, int as_json, char** out, char** err) {
    return guarded(err, [&]() {
        std::vector<std::string> violations;
        AdmissibleTriple t =
            triple_from_json(ctx->tab, parse_json_text(triple_json), violations);
        if (!violations.empty()) {
            set_out(err, joined(violations));
            return TEMPERA_ERR_INVALID;
        }
        GlId r = ctx->tab.require_gl(rho);
        AdmissibleTriple res;
        if (target < a) {
            if ((a - target) % 2 != 0) fail(errc::invalid, "deform target has wrong parity");
            res = deform_down(ctx->tab, t, r, a, (a - target) / 2);
        } else if (target > a) {
            res = deform_up(ctx->tab, t, r, a, target);
        } else {
            fail(errc::invalid, "deform target equals the block");
        }
        json j = triple_to_json(ctx->tab, res);
        set_out(out, j.dump(2) + "\n");
        (void)as_json;
        return TEMPERA_OK;
    });
}

tempera_status tempera_reduces(const tempera_ctx* ctx, const char* triple_json, const char* rho,
                               const char* alpha, long b, int as_json, char** out, char** err) {
    return guarded(err, [&]() {
        std::vector<std::string> violations;
        AdmissibleTriple t =
            triple_from_json(ctx->tab, parse_json_text(triple_json), violations);
        if (!violations.empty()) {
            set_out(err, joined(violations));
            return TEMPERA_ERR_INVALID;
        }
        GlId r = ctx->tab.require_gl(rho);
        bool reduces;
        std::string what;
        if (alpha) {
            HalfInt x = parse_half(alpha);
            reduces = point_reduces(ctx->tab, t, r, x) == Reducibility::Reduces;
            what = "nu^" + x.str() + " " + ctx->tab.gl(r).id;
        } else {
            if (b <= 0) fail(errc::invalid, "reduces needs --alpha or --b");
            reduces = delta_b_reduces(ctx->tab, t, r, b);
            what = "d(" + ctx->tab.gl(r).id + "," + std::to_string(b) + ")";
        }
        if (as_json)
            set_out(out, std::string("{\"reduces\":") + (reduces ? "true" : "false") + "}\n");
        else
            set_out(out, what + (reduces ? " reduces\n" : " is irreducible\n"));
        return reduces ? TEMPERA_OK : TEMPERA_CHECK_FAILED;
    });
}

tempera_status tempera_equiv(const tempera_ctx* ctx, const char* param_json_1,
                             const char* param_json_2, int as_json, char** out, char** err) {
    return guarded(err, [&]() {
        TemperedParam p = param_from_json(ctx->tab, parse_json_text(param_json_1));
        TemperedParam q = param_from_json(ctx->tab, parse_json_text(param_json_2));
        for (const TemperedParam* x : {&p, &q}) {
            auto v = validate_param(ctx->tab, *x);
            if (!v.empty()) {
                set_out(err, joined(v));
                return TEMPERA_ERR_INVALID;
            }
        }
        bool eq = params_equivalent(ctx->tab, p, q);
        if (as_json)
            set_out(out, std::string("{\"equivalent\":") + (eq ? "true" : "false") + "}\n");
        else
            set_out(out, eq ? "equivalent\n" : "inequivalent\n");
        return eq ? TEMPERA_OK : TEMPERA_CHECK_FAILED;
    });
}

tempera_status tempera_generic(const tempera_ctx* ctx, const char* param_json, int as_json,
                               char** out, char** err) {
    return guarded(err, [&]() {
        TemperedParam p = param_from_json(ctx->tab, parse_json_text(param_json));
        auto v = validate_param(ctx->tab, p);
        if (!v.empty()) {
            set_out(err, joined(v));
            return TEMPERA_ERR_INVALID;
        }
        bool g = is_generic(ctx->tab, p);
        if (as_json)
            set_out(out, std::string("{\"generic\":") + (g ? "true" : "false") + "}\n");
        else
            set_out(out, g ? "generic\n" : "not generic\n");
        return g ? TEMPERA_OK : TEMPERA_CHECK_FAILED;
    });
}

namespace {

LemmaKind lemma_kind(const char* lemma) {
    std::string name = lemma ? lemma : "";
    if (name == "def-main") return LemmaKind::DefMain;
    if (name == "def-even") return LemmaKind::DefEven;
    if (name == "def-odd2") return LemmaKind::DefOdd2;
    if (name == "pr-def-t") return LemmaKind::PrDefT;
    fail(errc::parse, "unknown lemma: " + name);
}

std::string lemma_row_text(const LemmaCheckRow& r) {
    return std::string(r.pass ? "pass" : "FAIL") + "  terms=" + std::to_string(r.got_terms) +
           "/" + std::to_string(r.expected_terms) + " mult=" + std::to_string(r.got_mult) +
           "/" + std::to_string(r.expected_mult) + "  " + r.instance + "\n";
}

}  // namespace

tempera_status tempera_check_lemma_instance(const tempera_ctx* ctx, const char* lemma,
                                            const char* chain_json, const char* rho, long b,
                                            long max_terms, int as_json, char** out,
                                            char** err) {
    return guarded(err, [&]() {
        ConstructionChain chain = chain_from_json(ctx->tab, parse_json_text(chain_json));
        std::size_t mt = max_terms > 0 ? static_cast<std::size_t>(max_terms) : 1000000;
        LemmaCheckRow r = check_lemma_instance(ctx->tab, lemma_kind(lemma), chain,
                                               ctx->tab.require_gl(rho), b, mt);
        if (as_json) {
            json j = {{"instance", r.instance},
                      {"terms", r.got_terms},
                      {"expected_terms", r.expected_terms},
                      {"mult", r.got_mult},
                      {"expected_mult", r.expected_mult},
                      {"pass", r.pass}};
            set_out(out, j.dump(2) + "\n");
        } else {
            set_out(out, lemma_row_text(r));
        }
        return r.pass ? TEMPERA_OK : TEMPERA_CHECK_FAILED;
    });
}

tempera_status tempera_check_lemma(const tempera_ctx* ctx, const char* lemma, const char* base,
                                   unsigned long long seed, long count, long max_terms,
                                   int as_json, char** out, char** err) {
    return guarded(err, [&]() {
        LemmaKind kind = lemma_kind(lemma);
        ClId b = ctx->tab.require_classical(base);
        std::size_t mt = max_terms > 0 ? static_cast<std::size_t>(max_terms) : 1000000;
        auto rows = check_lemma(ctx->tab, kind, b, seed, static_cast<std::size_t>(count), mt);
        bool all = true;
        if (as_json) {
            json j = json::array();
            for (const auto& r : rows) {
                all = all && r.pass;
                j.push_back({{"instance", r.instance},
                             {"terms", r.got_terms},
                             {"expected_terms", r.expected_terms},
                             {"mult", r.got_mult},
                             {"expected_mult", r.expected_mult},
                             {"pass", r.pass}});
            }
            set_out(out, j.dump(2) + "\n");
        } else {
            std::string text;
            for (const auto& r : rows) {
                all = all && r.pass;
                text += lemma_row_text(r);
            }
            text += std::string(all ? "all pass" : "FAILURES") + " (" +
                    std::to_string(rows.size()) + " instances)\n";
            set_out(out, text);
        }
        return all ? TEMPERA_OK : TEMPERA_CHECK_FAILED;
    });
}

}  // extern "C"
