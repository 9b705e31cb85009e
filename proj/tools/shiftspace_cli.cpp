// Command line front end: inspect shift presentations, run block and
// membership queries, recode, verify conjugacies, and transport generating
// families between graph algebras.
//
// Exit codes: 0 success (including Yes/Valid/VerifiedToDepth), 1 negative
// verdicts (No/Refuted/FailedRelation, with the witness printed), 2 input
// errors (parse failures carry line numbers).

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shiftspace/shiftspace.hpp"

namespace ss = shiftspace;
namespace fs = std::filesystem;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ss::Graph load_graph(const std::string& path) { return ss::text::parse_graph(slurp(path)); }

// Shift specs: builtin:<name>, edges:<graph-file>, or file:<presentation>.
ss::ShiftPresentation load_shift(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw InputError("shift spec must look like builtin:<name>, edges:<file>, or "
                         "file:<file>");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "builtin") return ss::ShiftPresentation::builtin(rest);
    if (kind == "edges") return ss::ShiftPresentation::edge_shift(load_graph(rest));
    if (kind == "file") {
        const fs::path base = fs::path(rest).parent_path();
        auto loader = [&base](const std::string& name) { return slurp(base / name); };
        return ss::text::parse_presentation(slurp(rest), loader);
    }
    throw InputError("unknown shift spec kind '" + kind + "'");
}

ss::SymbolTable table_for(const ss::ShiftPresentation& p) {
    if (p.kind() == ss::ShiftPresentation::Kind::EdgeShift)
        return ss::SymbolTable::for_graph(p.graph_ptr());
    return ss::SymbolTable::canonical();
}

std::string membership_name(ss::Membership m) {
    switch (m) {
        case ss::Membership::Yes: return "Yes";
        case ss::Membership::No: return "No";
        case ss::Membership::PartialYes: return "PartialYes";
    }
    return "No";
}

std::string class_name(ss::SpaceClass c) {
    switch (c) {
        case ss::SpaceClass::FiniteSymbol: return "FiniteSymbol";
        case ss::SpaceClass::RowFiniteInfinite: return "RowFiniteInfinite";
        case ss::SpaceClass::NotRowFinite: return "NotRowFinite";
        case ss::SpaceClass::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::vector<std::string> sorted_words(const std::set<ss::Word>& words,
                                      const ss::SymbolTable& table) {
    std::vector<std::string> out;
    for (const ss::Word& w : words) out.push_back(ss::text::print_word(w, table));
    std::sort(out.begin(), out.end());
    return out;
}

std::string print_boundary(const ss::Graph& g, const ss::BoundaryPathElement& x) {
    if (x.is_infinite()) return ss::text::print_seq(x.seq(), ss::SymbolTable::for_graph(
                                                                 std::make_shared<ss::Graph>(g)));
    return ss::text::print_path_or_vertex(g, x.path());
}

ss::BoundaryPathElement parse_boundary(const ss::Graph& g,
                                       const std::shared_ptr<const ss::Graph>& shared,
                                       const std::string& s) {
    if (s.find('|') != std::string::npos)
        return ss::BoundaryPathElement::infinite(
            ss::text::parse_seq(s, ss::SymbolTable::for_graph(shared)));
    return ss::BoundaryPathElement::finite(ss::text::parse_path_or_vertex(g, s));
}

std::vector<ss::Seq> default_samples(const ss::ShiftPresentation& p, std::uint64_t horizon) {
    return ss::ev_periodic_members(p, 4, ss::symbol_cap(p, std::min<std::uint64_t>(horizon, 4)),
                                   horizon);
}

int run(int argc, char** argv) {
    CLI::App app{"one-sided shift spaces over countable alphabets"};
    app.require_subcommand(1);

    std::string shift_spec, seq_text, out_format = "text";
    std::uint64_t horizon = 8;
    std::size_t block_len = 2;

    auto* blocks = app.add_subcommand("blocks", "list the length-n blocks of a shift");
    blocks->add_option("--shift", shift_spec)->required();
    blocks->add_option("--n", block_len)->required();
    blocks->add_option("--horizon", horizon);
    blocks->add_option("--format", out_format)->check(CLI::IsMember({"text", "lines"}));

    auto* member = app.add_subcommand("member", "decide membership of a sequence");
    member->add_option("--shift", shift_spec)->required();
    member->add_option("--seq", seq_text)->required();
    member->add_option("--horizon", horizon);

    auto* classify_cmd = app.add_subcommand("classify", "classify a shift presentation");
    classify_cmd->add_option("--shift", shift_spec)->required();
    classify_cmd->add_option("--horizon", horizon);

    std::string x_text, y_text, metric_kind = "dA";
    auto* metric = app.add_subcommand("metric", "exact distance between two sequences");
    metric->add_option("--x", x_text)->required();
    metric->add_option("--y", y_text)->required();
    metric->add_option("--metric", metric_kind)->check(CLI::IsMember({"dA", "D"}));

    std::string phi_path, psi_path, name = "composed";
    auto* compose_cmd = app.add_subcommand("compose", "compose two bounded block maps");
    compose_cmd->add_option("--phi", phi_path)->required();
    compose_cmd->add_option("--psi", psi_path)->required();
    compose_cmd->add_option("--name", name);

    std::uint32_t block_n = 2;
    auto* higher = app.add_subcommand("higher-block", "the n-block recoding of a shift");
    higher->add_option("--shift", shift_spec)->required();
    higher->add_option("--n", block_n)->required();
    higher->add_option("--horizon", horizon);
    higher->add_option("--seq", seq_text);

    auto* recode = app.add_subcommand(
        "recode", "present a finite-alphabet step shift as an edge shift");
    recode->add_option("--shift", shift_spec)->required();
    recode->add_option("--horizon", horizon);

    std::string source_spec, target_spec, forward_path, backward_path, samples_text;
    std::size_t depth = 3;
    auto* verify = app.add_subcommand("verify-conjugacy", "check a conjugacy witness");
    verify->add_option("--source", source_spec)->required();
    verify->add_option("--target", target_spec)->required();
    verify->add_option("--forward", forward_path)->required();
    verify->add_option("--backward", backward_path)->required();
    verify->add_option("--depth", depth);
    verify->add_option("--samples", samples_text);
    verify->add_option("--horizon", horizon);

    std::string e_path, f_path;
    bool do_verify = false, do_surjectivity = false;
    auto* ck = app.add_subcommand("ck-image",
                                  "transport a generating family along a window map");
    ck->add_option("--E", e_path)->required();
    ck->add_option("--F", f_path)->required();
    ck->add_option("--phi", phi_path)->required();
    ck->add_flag("--verify", do_verify);
    ck->add_flag("--surjectivity", do_surjectivity);

    std::string graph_path, alpha_text, beta_text, gamma_text;
    std::string with_alpha, with_beta, with_gamma;
    bool invert = false;
    auto* groupoid_cmd = app.add_subcommand("groupoid", "build and combine groupoid elements");
    groupoid_cmd->add_option("--graph", graph_path)->required();
    groupoid_cmd->add_option("--alpha", alpha_text)->required();
    groupoid_cmd->add_option("--beta", beta_text)->required();
    groupoid_cmd->add_option("--gamma", gamma_text)->required();
    groupoid_cmd->add_option("--compose-alpha", with_alpha);
    groupoid_cmd->add_option("--compose-beta", with_beta);
    groupoid_cmd->add_option("--compose-gamma", with_gamma);
    groupoid_cmd->add_flag("--inverse", invert);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // --help exits 0; bad flags are input errors
    }

    if (blocks->parsed()) {
        auto p = load_shift(shift_spec);
        auto lang = ss::block_language(p, block_len, horizon);
        auto words = sorted_words(lang.words, table_for(p));
        if (out_format == "lines") {
            for (const auto& w : words) std::cout << w << "\n";
        } else {
            std::cout << "B_" << block_len << (lang.partial ? " (partial at horizon " : " (exact")
                      << (lang.partial ? std::to_string(horizon) + ")" : ")") << ": {";
            for (std::size_t i = 0; i < words.size(); ++i)
                std::cout << (i ? ", " : "") << words[i];
            std::cout << "}\n";
        }
        return 0;
    }

    if (member->parsed()) {
        auto p = load_shift(shift_spec);
        ss::Seq x = ss::text::parse_seq(seq_text, table_for(p));
        auto verdict = ss::contains(p, x, horizon);
        std::cout << membership_name(verdict) << "\n";
        return verdict == ss::Membership::No ? 1 : 0;
    }

    if (classify_cmd->parsed()) {
        std::cout << class_name(ss::classify(load_shift(shift_spec), horizon)) << "\n";
        return 0;
    }

    if (metric->parsed()) {
        const auto table = ss::SymbolTable::canonical();
        ss::Seq x = ss::text::parse_seq(x_text, table);
        ss::Seq y = ss::text::parse_seq(y_text, table);
        ss::Dyadic d = metric_kind == "D" ? ss::boundedness_metric(x, y)
                                          : ss::cylinder_metric(x, y);
        std::cout << d.to_string() << "\n";
        return 0;
    }

    if (compose_cmd->parsed()) {
        const auto table = ss::SymbolTable::canonical();
        auto phi = ss::text::parse_block_code(slurp(phi_path), table, table);
        auto psi = ss::text::parse_block_code(slurp(psi_path), table, table);
        std::cout << ss::text::print_block_code(ss::compose(phi, psi), name, table, table);
        return 0;
    }

    if (higher->parsed()) {
        auto p = load_shift(shift_spec);
        auto coding = ss::higher_block_code(p, block_n, horizon);
        const auto source_table = table_for(p);
        const auto image_table = ss::SymbolTable::canonical();
        for (std::uint32_t k = 0; k < coding.blocks.size(); ++k)
            std::cout << "symbol a" << k + 1 << " = "
                      << ss::text::print_word(coding.blocks[k], source_table) << "\n";
        if (!seq_text.empty()) {
            ss::Seq x = ss::text::parse_seq(seq_text, source_table);
            ss::Seq image = ss::apply(coding.phi, x);
            std::cout << "image " << ss::text::print_seq(image, image_table) << "\n";
            std::cout << "roundtrip "
                      << (ss::apply(coding.pi, image) == x ? "identity" : "BROKEN") << "\n";
        }
        return 0;
    }

    if (recode->parsed()) {
        auto p = load_shift(shift_spec);
        if (p.kind() != ss::ShiftPresentation::Kind::ForbiddenBlocks || !p.alphabet_size())
            throw InputError("recode expects a forbidden-block shift over a finite alphabet");
        std::size_t maxlen = 1;
        for (const ss::Word& w : p.forbidden()) maxlen = std::max(maxlen, w.size());
        const std::uint32_t m = maxlen < 2 ? 1 : static_cast<std::uint32_t>(maxlen - 1);
        auto coding = ss::higher_block_code(p, m, horizon);
        const auto source_table = table_for(p);
        for (std::uint32_t k = 0; k < coding.blocks.size(); ++k)
            std::cout << "# symbol a" << k + 1 << " = "
                      << ss::text::print_word(coding.blocks[k], source_table) << "\n";
        ss::Graph g = ss::one_step_to_graph(
            static_cast<std::uint32_t>(coding.blocks.size()), coding.image.forbidden(),
            static_cast<std::uint32_t>(coding.blocks.size()));
        std::cout << ss::text::print_graph(g);
        ss::ConjugacyWitness w{coding.phi, coding.pi, p, coding.image};
        auto verdict = ss::verify_conjugacy(w, 3, default_samples(p, horizon), horizon);
        if (!verdict.verified) {
            std::cout << "Refuted: " << verdict.counterexample << "\n";
            return 1;
        }
        std::cout << "# VerifiedToDepth(" << verdict.depth << ")\n";
        return 0;
    }

    if (verify->parsed()) {
        auto source = load_shift(source_spec);
        auto target = load_shift(target_spec);
        auto forward = ss::text::parse_block_code(slurp(forward_path), table_for(source),
                                                  table_for(target));
        auto backward = ss::text::parse_block_code(slurp(backward_path), table_for(target),
                                                   table_for(source));
        std::vector<ss::Seq> samples;
        if (samples_text.empty()) {
            samples = default_samples(source, horizon);
        } else {
            for (const auto& part : ss::text::split(samples_text, ';'))
                samples.push_back(ss::text::parse_seq(part, table_for(source)));
        }
        ss::ConjugacyWitness w{forward, backward, source, target};
        auto verdict = ss::verify_conjugacy(w, depth, samples, horizon);
        if (!verdict.verified) {
            std::cout << "Refuted: " << verdict.counterexample << "\n";
            return 1;
        }
        std::cout << "VerifiedToDepth(" << verdict.depth << ")\n";
        return 0;
    }

    if (ck->parsed()) {
        auto e_graph = std::make_shared<const ss::Graph>(load_graph(e_path));
        auto f_graph = std::make_shared<const ss::Graph>(load_graph(f_path));
        auto phi = ss::text::parse_block_code(slurp(phi_path),
                                              ss::SymbolTable::for_graph(e_graph),
                                              ss::SymbolTable::for_graph(f_graph));
        if (!phi.is_bounded()) throw InputError("the window map must be bounded");
        auto images = ss::ck_family_along_code(e_graph, f_graph, phi.block_map());
        for (const auto& [e, img] : images.edge_images) {
            std::cout << "pi(s_" << e_graph->edge_id(e) << ") =\n";
            std::cout << ss::text::print_element(img);
        }
        for (const auto& [v, img] : images.vertex_images) {
            std::cout << "pi(p_" << e_graph->vertex_id(v) << ") =\n";
            std::cout << ss::text::print_element(img);
        }
        if (do_verify) {
            auto check = ss::verify_ck_family(images);
            if (!check.valid) {
                std::cout << "FailedRelation(" << check.relation << ", " << check.witness
                          << ")\n";
                return 1;
            }
            std::cout << "Valid\n";
        }
        if (do_surjectivity) {
            for (std::uint64_t i = 0; i < f_graph->explicit_edge_count(); ++i) {
                ss::EdgeRef a{ss::EdgeRef::Kind::Explicit, 0, i};
                auto pre = ss::generator_preimage(images, a, phi.block_map());
                const bool ok = ss::equal(ss::apply_ck_images(images, pre),
                                          ss::AlgebraElement::edge(f_graph, a));
                std::cout << "preimage t_" << f_graph->edge_id(a) << ": "
                          << (ok ? "recovered" : "FAILED") << "\n";
                if (!ok) return 1;
            }
        }
        return 0;
    }

    if (groupoid_cmd->parsed()) {
        auto shared = std::make_shared<const ss::Graph>(load_graph(graph_path));
        const ss::Graph& g = *shared;
        auto element = ss::make_groupoid_element(
            g, ss::text::parse_path_or_vertex(g, alpha_text),
            ss::text::parse_path_or_vertex(g, beta_text), parse_boundary(g, shared, gamma_text));
        if (invert) element = ss::groupoid_inverse(element);
        if (!with_alpha.empty() || !with_beta.empty() || !with_gamma.empty()) {
            auto other = ss::make_groupoid_element(
                g, ss::text::parse_path_or_vertex(g, with_alpha),
                ss::text::parse_path_or_vertex(g, with_beta),
                parse_boundary(g, shared, with_gamma));
            try {
                element = ss::groupoid_compose(element, other);
            } catch (const ss::not_composable_error& e) {
                std::cout << "NotComposable: " << e.what() << "\n";
                return 1;
            }
        }
        std::cout << "(" << print_boundary(g, element.x) << ", " << element.k << ", "
                  << print_boundary(g, element.y) << ")\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ss::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ss::error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
