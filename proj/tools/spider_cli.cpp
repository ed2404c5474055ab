#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "spider/diagram.hpp"
#include "spider/errors.hpp"
#include "spider/invariants.hpp"
#include "spider/moves.hpp"
#include "spider/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;
constexpr int kExitLimit = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw spider::ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

spider::Diagram load_diagram(const std::string& path) {
    std::string text = read_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return spider::diagram_from_json(nlohmann::json::parse(text));
    return spider::Diagram::parse_file_text(text);
}

int default_crossing_limit() {
    if (const char* env = std::getenv("SPIDER_CROSSING_LIMIT")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw spider::ValidationError("SPIDER_CROSSING_LIMIT is not an integer");
        }
    }
    return 16;
}

// splitmix64; decorrelates per-trial seeds
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t z = seed + (trial + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct Options {
    std::string file, file2, ruleset_path;
    bool normalized = false;
    bool json_out = false;
    bool allow_inconsistent = false;
    int max_crossings = -1; // -1: env or default
    int threads = 0;
    int moves = 20, trials = 100;
    std::uint64_t seed = 1;

    spider::ExpandOptions expand_opts() const {
        spider::ExpandOptions o;
        o.crossing_limit = max_crossings >= 0 ? max_crossings : default_crossing_limit();
        o.threads = threads;
        return o;
    }
    spider::RuleSet rules() const {
        if (ruleset_path.empty()) return spider::RuleSet::standard();
        return spider::RuleSet::load(read_file(ruleset_path), !allow_inconsistent);
    }
};

void emit(const nlohmann::json& j, const std::string& text, bool json_out) {
    if (json_out)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_bracket(const Options& opt) {
    spider::Diagram d = load_diagram(opt.file);
    spider::Reducer reducer(opt.rules(), !opt.allow_inconsistent);
    spider::WebCombination combo = opt.normalized
                                       ? spider::normalized_bracket(d, reducer, opt.expand_opts())
                                       : spider::expand(d, reducer, opt.expand_opts());
    emit(spider::bracket_json(d, combo, opt.normalized), spider::bracket_text(combo),
         opt.json_out);
    return kExitOk;
}

int cmd_kus(const Options& opt) {
    spider::Diagram d = load_diagram(opt.file);
    spider::Web w = spider::kus(d);
    emit(spider::kus_json(d, w), spider::kus_text(w), opt.json_out);
    return kExitOk;
}

int cmd_certify(const Options& opt) {
    spider::Diagram d = load_diagram(opt.file);
    spider::MinimalityCertificate cert = spider::minimality_certificate(d);
    emit(spider::certificate_json(cert), spider::certificate_text(cert), opt.json_out);
    return kExitOk;
}

int cmd_kauffman(const Options& opt) {
    spider::Diagram d = load_diagram(opt.file);
    spider::LaurentPoly f = spider::kauffman_f(d, opt.expand_opts().crossing_limit);
    emit(spider::kauffman_json(d, f), spider::kauffman_text(f), opt.json_out);
    return kExitOk;
}

int cmd_parity(const Options& opt) {
    spider::Diagram d = load_diagram(opt.file);
    if (d.components().size() != 1)
        throw spider::DomainError("parity needs a single-component diagram");
    emit(spider::parity_json(d), spider::parity_text(d), opt.json_out);
    return kExitOk;
}

int cmd_distinguish(const Options& opt) {
    spider::Diagram d1 = load_diagram(opt.file);
    spider::Diagram d2 = load_diagram(opt.file2);
    spider::Reducer reducer(opt.rules(), !opt.allow_inconsistent);
    spider::DistinguishReport rep = spider::distinguish(d1, d2, reducer, opt.expand_opts());
    emit(spider::distinguish_json(rep), spider::distinguish_text(rep), opt.json_out);
    return kExitOk;
}

int cmd_fuzz(const Options& opt) {
    spider::Diagram d = load_diagram(opt.file);
    spider::Reducer reducer(opt.rules(), !opt.allow_inconsistent);
    spider::ExpandOptions eopts = opt.expand_opts();

    spider::WebCombination base = spider::normalized_bracket(d, reducer, eopts);
    bool single = d.components().size() == 1;
    spider::LaurentPoly base_f;
    if (single) base_f = spider::kauffman_f(d, eopts.crossing_limit);
    bool check_leading = single && spider::is_irreducible(spider::kus(d));

    spider::WalkOptions wopts;
    wopts.max_crossings = std::min(eopts.crossing_limit, 12);

    int failures = 0;
    for (int t = 0; t < opt.trials; ++t) {
        std::vector<spider::MoveSpec> trace;
        spider::Diagram mutated =
            spider::random_equivalent(d, opt.moves, mix_seed(opt.seed, t), wopts, &trace);
        std::vector<std::string> broken;
        if (spider::normalized_bracket(mutated, reducer, eopts) != base)
            broken.push_back("normalized bracket");
        if (single && spider::kauffman_f(mutated, eopts.crossing_limit) != base_f)
            broken.push_back("kauffman f");
        if (check_leading && !spider::leading_term_check(d, mutated, reducer, eopts))
            broken.push_back("leading term");
        if (!broken.empty()) {
            ++failures;
            std::cout << "trial " << t << ": VIOLATION (";
            for (std::size_t i = 0; i < broken.size(); ++i)
                std::cout << (i ? ", " : "") << broken[i];
            std::cout << ")\n  start: " << d.format() << "\n  moves:\n";
            for (const auto& m : trace) std::cout << "    " << m.to_string() << "\n";
            std::cout << "  end:   " << mutated.format() << "\n";
        }
    }
    nlohmann::json j{{"diagram", d.format()},
                     {"trials", opt.trials},
                     {"moves", opt.moves},
                     {"seed", opt.seed},
                     {"failures", failures},
                     {"checked_leading_term", check_leading}};
    std::string text = "fuzz: " + std::to_string(opt.trials) + " trials x " +
                       std::to_string(opt.moves) + " moves, " + std::to_string(failures) +
                       " failures\n";
    emit(j, text, opt.json_out);
    return failures == 0 ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-valued Kuperberg bracket of virtual link diagrams"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_file = true) {
        if (needs_file) sub->add_option("file", opt.file, "Gauss code file")->required();
        sub->add_flag("--json", opt.json_out, "emit JSON instead of text");
        sub->add_option("--max-crossings", opt.max_crossings,
                        "expansion limit (overrides SPIDER_CROSSING_LIMIT)");
        sub->add_option("--threads", opt.threads, "worker threads (0 = auto)");
        sub->add_option("--ruleset", opt.ruleset_path, "rule coefficient file");
        sub->add_flag("--allow-inconsistent-ruleset", opt.allow_inconsistent,
                      "skip the rule consistency check");
    };

    auto* bracket = app.add_subcommand("bracket", "expand a diagram to its bracket");
    add_common(bracket);
    bracket->add_flag("--normalized", opt.normalized, "apply the A^(-8w) normalization");

    auto* kus_cmd = app.add_subcommand("kus", "the all-webbed (unoriented) state");
    add_common(kus_cmd);

    auto* certify = app.add_subcommand("certify", "minimality certificate");
    add_common(certify);

    auto* kauffman = app.add_subcommand("kauffman", "normalized Kauffman bracket");
    add_common(kauffman);

    auto* parity = app.add_subcommand("parity", "chord parities of a Gauss diagram");
    add_common(parity);

    auto* distinguish = app.add_subcommand("distinguish", "compare two normalized brackets");
    add_common(distinguish);
    distinguish->add_option("file2", opt.file2, "second Gauss code file")->required();

    auto* fuzz = app.add_subcommand("fuzz", "random Reidemeister moves, invariance check");
    add_common(fuzz);
    fuzz->add_option("--moves", opt.moves, "moves per trial");
    fuzz->add_option("--trials", opt.trials, "number of trials");
    fuzz->add_option("--seed", opt.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (bracket->parsed()) return cmd_bracket(opt);
        if (kus_cmd->parsed()) return cmd_kus(opt);
        if (certify->parsed()) return cmd_certify(opt);
        if (kauffman->parsed()) return cmd_kauffman(opt);
        if (parity->parsed()) return cmd_parity(opt);
        if (distinguish->parsed()) return cmd_distinguish(opt);
        if (fuzz->parsed()) return cmd_fuzz(opt);
    } catch (const spider::LimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
