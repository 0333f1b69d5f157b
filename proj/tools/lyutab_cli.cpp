#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lyutab/corpus.hpp"
#include "lyutab/errors.hpp"
#include "lyutab/json_io.hpp"
#include "lyutab/lyubeznik.hpp"

namespace {

using namespace lyutab;

struct CommonOpts {
    std::string ideal_path;
    std::string mode = "both";
    std::optional<std::uint64_t> p;
    int window_radius = 0;
    std::optional<std::uint32_t> max_level;
    unsigned jobs = 1;
    std::string format = "text";
    bool slow = false;
};

void add_table_flags(CLI::App* cmd, CommonOpts& opts, bool with_mode = true) {
    cmd->add_option("ideal", opts.ideal_path, "ideal JSON file")->required();
    if (with_mode)
        cmd->add_option("--mode", opts.mode, "equal, mixed or both")
            ->check(CLI::IsMember({"equal", "mixed", "both"}));
    cmd->add_option("-p,--prime", opts.p, "characteristic (overrides the file)");
    cmd->add_option("--window", opts.window_radius, "extra window radius around [-1,0]^n")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-level", opts.max_level, "cap on mixed tower levels");
    cmd->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--slow", opts.slow, "use the brute-force strand pipeline");
}

IdealInput load_input(const CommonOpts& opts) {
    IdealInput input = load_ideal_file(opts.ideal_path);
    if (opts.p) {
        CoefficientRing::check_prime(*opts.p);
        input.p = *opts.p;
    }
    return input;
}

TableOptions make_options(const CommonOpts& opts, int n) {
    TableOptions options;
    options.use_fast_path = !opts.slow;
    options.jobs = opts.jobs;
    options.max_level = opts.max_level;
    if (opts.window_radius > 0)
        options.window = Window::box(n, -1 - opts.window_radius, opts.window_radius);
    return options;
}

void print_table(const LyubeznikTable& table, const std::string& format) {
    if (format == "json")
        std::cout << table_to_json(table) << "\n";
    else
        std::cout << render_table_text(table);
}

int run_table(const CommonOpts& opts) {
    IdealInput input = load_input(opts);
    TableOptions options = make_options(opts, input.ideal.n);
    if (opts.mode == "equal") {
        print_table(equal_char_table(input.ideal, input.p, options), opts.format);
    } else if (opts.mode == "mixed") {
        print_table(mixed_table(input.ideal, input.p, input.include_p, options), opts.format);
    } else {
        TableComparison cmp = compare_tables(input.ideal, input.p, options);
        print_table(cmp.equal_char, opts.format);
        print_table(cmp.mixed, opts.format);
        if (cmp.equal) {
            std::cout << "tables agree\n";
        } else {
            std::cout << "tables differ at";
            for (auto [i, j] : cmp.diff) std::cout << " (" << i << "," << j << ")";
            std::cout << "\n";
        }
    }
    return 0;
}

int run_verify(const CommonOpts& opts) {
    IdealInput input = load_input(opts);
    TableOptions options = make_options(opts, input.ideal.n);
    options.check_socle_concentration = true;
    bool all_pass = true;
    auto report_for = [&](const LyubeznikTable& table, const std::string& label) {
        PropertyReport report = verify_table_properties(table);
        for (const auto& item : report.items) {
            std::cout << (item.pass ? "[PASS] " : "[FAIL] ") << label << " " << item.name;
            if (!item.pass) std::cout << " (" << item.witness << ")";
            std::cout << "\n";
        }
        all_pass = all_pass && report.all_pass();
    };
    if (opts.mode == "equal" || opts.mode == "both")
        report_for(equal_char_table(input.ideal, input.p, options), "equal");
    if (opts.mode == "mixed" || opts.mode == "both")
        report_for(mixed_table(input.ideal, input.p, input.include_p, options), "mixed");
    if (!all_pass) throw PipelineError("table property verification failed");
    return 0;
}

int run_bockstein(const CommonOpts& opts, int index) {
    IdealInput input = load_input(opts);
    Window window = Window::box(input.ideal.n, -1 - opts.window_radius, opts.window_radius);
    BocksteinReport report = bockstein_ranks(input.ideal, index, input.p, window);
    std::cout << "bockstein on H^" << report.index << " mod " << report.p
              << ": total rank " << report.total_rank << "\n";
    for (std::size_t cell = 0; cell < report.ranks.size(); ++cell) {
        if (report.ranks[cell] == 0) continue;
        std::vector<int> a = report.window.degree(cell);
        std::cout << "  degree (";
        for (std::size_t k = 0; k < a.size(); ++k) std::cout << (k ? "," : "") << a[k];
        std::cout << "): rank " << report.ranks[cell] << "\n";
    }
    return 0;
}

struct SearchOpts {
    std::string around_path;
    std::size_t budget = 0;
    std::size_t random_count = 0;
    std::uint64_t seed = 1;
    int min_n = 3, max_n = 6;
    std::size_t max_gens = 8;
    int exhaustive_n = 0;
    std::uint64_t p = 2;
    unsigned jobs = 1;
};

int run_search(const SearchOpts& opts) {
    std::vector<MonomialIdeal> candidates;
    if (!opts.around_path.empty()) {
        IdealInput input = load_ideal_file(opts.around_path);
        candidates = around_complex(input.ideal, opts.budget);
    } else if (opts.exhaustive_n > 0) {
        candidates = all_squarefree_ideals(opts.exhaustive_n);
    } else if (opts.random_count > 0) {
        candidates = random_ideals(opts.seed, opts.random_count, opts.min_n, opts.max_n,
                                   opts.max_gens);
    } else {
        throw ParseError("search needs --around, --random or --exhaustive");
    }
    std::cout << "searching " << candidates.size() << " candidates at p=" << opts.p << "\n";

    TableOptions options;
    options.jobs = opts.jobs;
    std::vector<SearchHit> hits = search_differing_tables(candidates, opts.p, options);
    for (const auto& hit : hits) {
        IdealInput out;
        out.ideal = hit.ideal;
        out.p = opts.p;
        out.include_p = true;
        std::cout << "hit:";
        for (auto [i, j] : hit.diff) std::cout << " (" << i << "," << j << ")";
        std::cout << "\n" << ideal_to_json(out) << "\n";
    }
    std::cout << hits.size() << " differing ideal(s)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lyubeznik tables of monomial quotients in equal and mixed characteristic"};
    app.require_subcommand(1);

    CommonOpts table_opts;
    CLI::App* table_cmd = app.add_subcommand("table", "compute Lyubeznik table(s)");
    add_table_flags(table_cmd, table_opts);
    table_cmd->add_option("--format", table_opts.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    CommonOpts verify_opts;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "check structural properties of the table(s)");
    add_table_flags(verify_cmd, verify_opts);

    CommonOpts bockstein_opts;
    int bockstein_index = 3;
    CLI::App* bockstein_cmd =
        app.add_subcommand("bockstein", "ranks of the mod-p Bockstein on a strand");
    bockstein_cmd->add_option("ideal", bockstein_opts.ideal_path, "ideal JSON file")
        ->required();
    bockstein_cmd->add_option("--index", bockstein_index, "cohomological index")->required();
    bockstein_cmd->add_option("-p,--prime", bockstein_opts.p, "characteristic");
    bockstein_cmd->add_option("--window", bockstein_opts.window_radius,
                              "extra window radius around [-1,0]^n");

    SearchOpts search_opts;
    CLI::App* search_cmd =
        app.add_subcommand("search", "look for ideals whose two tables differ");
    search_cmd->add_option("--around", search_opts.around_path,
                           "grow candidate complexes around this ideal's complex");
    search_cmd->add_option("--budget", search_opts.budget, "extra facets to try");
    search_cmd->add_option("--random", search_opts.random_count, "random candidate count");
    search_cmd->add_option("--seed", search_opts.seed, "random seed");
    search_cmd->add_option("--min-n", search_opts.min_n, "minimum ambient variables");
    search_cmd->add_option("--max-n", search_opts.max_n, "maximum ambient variables");
    search_cmd->add_option("--max-gens", search_opts.max_gens, "maximum generators");
    search_cmd->add_option("--exhaustive", search_opts.exhaustive_n,
                           "all squarefree ideals in this many variables");
    search_cmd->add_option("-p,--prime", search_opts.p, "characteristic");
    search_cmd->add_option("--jobs", search_opts.jobs, "worker threads");

    try {
        app.parse(argc, argv);
        if (*table_cmd) return run_table(table_opts);
        if (*verify_cmd) return run_verify(verify_opts);
        if (*bockstein_cmd) return run_bockstein(bockstein_opts, bockstein_index);
        if (*search_cmd) return run_search(search_opts);
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const NotSquareFreeError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ResourceLimitError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
}
