// tempera: batch front end for the symbolic engine. All computation sits
// behind the C API; this binary only parses arguments and moves strings.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tempera/tempera.h"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        std::exit(2);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int exit_code(tempera_status s) {
    switch (s) {
        case TEMPERA_OK: return 0;
        case TEMPERA_CHECK_FAILED: return 1;
        default: return 2;
    }
}

int finish(tempera_status s, char* out, char* errmsg) {
    if (out) {
        std::fputs(out, stdout);
        tempera_str_free(out);
    }
    if (errmsg) {
        std::fprintf(stderr, "error: %s\n", errmsg);
        tempera_str_free(errmsg);
    }
    return exit_code(s);
}

unsigned long long seed_from_env() {
    const char* s = std::getenv("TEMPERA_SEED");
    if (!s) return 0;
    return std::strtoull(s, nullptr, 10);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tempera: multisegment Hopf algebra and Jacquet-module calculator"};
    app.require_subcommand(1);

    std::string catalog_path;
    bool as_json = false;
    long max_terms = 1000000;
    app.add_option("--catalog", catalog_path, "catalog JSON file")->required();
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--max-terms", max_terms, "abort guard for expansions");

    std::string expr, file1, file2, rho, alpha, lemma, base;
    long b = 0, a = 0, target = 0, depth = -1, count = 20;
    bool filter = false;

    auto* c_mstar = app.add_subcommand("mstar", "twisted comultiplication of a multisegment");
    c_mstar->add_option("expr", expr)->required();

    auto* c_bound = app.add_subcommand("mu-bound", "Jacquet-module over-approximation");
    c_bound->add_option("chain", file1)->required();
    c_bound->add_flag("--filter", filter, "apply the Jordan filter");
    c_bound->add_option("--depth", depth, "use only the first N steps");

    auto* c_vt = app.add_subcommand("validate-triple", "validate a triple file");
    c_vt->add_option("file", file1)->required();

    auto* c_vc = app.add_subcommand("validate-chain", "replay a construction chain");
    c_vc->add_option("file", file1)->required();

    auto* c_pd = app.add_subcommand("pi-delta", "constituent case analysis");
    c_pd->add_option("chain", file1)->required();
    c_pd->add_option("--rho", rho)->required();
    c_pd->add_option("--b", b)->required();

    auto* c_dec = app.add_subcommand("decompose", "sign vectors of a tempered parameter");
    c_dec->add_option("file", file1)->required();

    auto* c_def = app.add_subcommand("deform", "move one Jordan block of a triple");
    c_def->add_option("file", file1)->required();
    c_def->add_option("--rho", rho)->required();
    c_def->add_option("--a", a)->required();
    c_def->add_option("--to", target)->required();

    auto* c_red = app.add_subcommand("reduces", "reducibility against a triple");
    c_red->add_option("file", file1)->required();
    c_red->add_option("--rho", rho)->required();
    c_red->add_option("--alpha", alpha, "exponent, e.g. 3/2");
    c_red->add_option("--b", b, "block size for the delta test");

    auto* c_eq = app.add_subcommand("equiv", "equivalence of tempered parameters");
    c_eq->add_option("file1", file1)->required();
    c_eq->add_option("file2", file2)->required();

    auto* c_gen = app.add_subcommand("generic", "genericity of a tempered parameter");
    c_gen->add_option("file", file1)->required();

    auto* c_cl = app.add_subcommand("check-lemma", "multiplicity replication");
    c_cl->add_option("lemma", lemma, "def-main | def-even | def-odd2 | pr-def-t")->required();
    c_cl->add_option("chain", file1, "explicit instance chain (with --rho, --b)");
    c_cl->add_option("--rho", rho, "line of the explicit instance");
    c_cl->add_option("--b", b, "block size of the explicit instance");
    c_cl->add_option("--base", base, "cuspidal base id for random instances");
    c_cl->add_option("--count", count, "number of random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    char* errmsg = nullptr;
    tempera_ctx* ctx = nullptr;
    tempera_status st = tempera_ctx_new(read_file(catalog_path).c_str(), &ctx, &errmsg);
    if (st != TEMPERA_OK) return finish(st, nullptr, errmsg);

    char* out = nullptr;
    if (c_mstar->parsed()) {
        st = tempera_mstar(ctx, expr.c_str(), as_json, &out, &errmsg);
    } else if (c_bound->parsed()) {
        st = tempera_mu_bound(ctx, read_file(file1).c_str(), filter, depth, max_terms, as_json,
                              &out, &errmsg);
    } else if (c_vt->parsed()) {
        st = tempera_validate_triple(ctx, read_file(file1).c_str(), as_json, &out, &errmsg);
    } else if (c_vc->parsed()) {
        st = tempera_validate_chain(ctx, read_file(file1).c_str(), as_json, &out, &errmsg);
    } else if (c_pd->parsed()) {
        st = tempera_pi_delta(ctx, read_file(file1).c_str(), rho.c_str(), b, as_json, &out,
                              &errmsg);
    } else if (c_dec->parsed()) {
        st = tempera_decompose(ctx, read_file(file1).c_str(), as_json, &out, &errmsg);
    } else if (c_def->parsed()) {
        st = tempera_deform(ctx, read_file(file1).c_str(), rho.c_str(), a, target, as_json, &out,
                            &errmsg);
    } else if (c_red->parsed()) {
        st = tempera_reduces(ctx, read_file(file1).c_str(), rho.c_str(),
                             alpha.empty() ? nullptr : alpha.c_str(), b, as_json, &out, &errmsg);
    } else if (c_eq->parsed()) {
        st = tempera_equiv(ctx, read_file(file1).c_str(), read_file(file2).c_str(), as_json,
                           &out, &errmsg);
    } else if (c_gen->parsed()) {
        st = tempera_generic(ctx, read_file(file1).c_str(), as_json, &out, &errmsg);
    } else if (c_cl->parsed()) {
        if (!file1.empty()) {
            st = tempera_check_lemma_instance(ctx, lemma.c_str(), read_file(file1).c_str(),
                                              rho.c_str(), b, max_terms, as_json, &out, &errmsg);
        } else if (base.empty()) {
            std::fprintf(stderr, "error: check-lemma needs a chain file or --base\n");
            st = TEMPERA_ERR_INVALID;
        } else {
            st = tempera_check_lemma(ctx, lemma.c_str(), base.c_str(), seed_from_env(), count,
                                     max_terms, as_json, &out, &errmsg);
        }
    }

    tempera_ctx_free(ctx);
    return finish(st, out, errmsg);
}
