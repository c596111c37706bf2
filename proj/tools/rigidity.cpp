// Command line front end: analyze systems, decide existence of nonaffine
// equivariant maps, emit witness maps, re-verify them numerically and sample
// them on grids. All documents are JSON; "-" means stdin.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rigidity/rigidity.hpp"

namespace {

using namespace rigidity;

constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNoWitness = 4;
constexpr int kExitVerifyFailed = 5;
constexpr int kExitGridDimension = 6;

std::string read_input(const std::string& path) {
    std::ostringstream text;
    if (path == "-") {
        text << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError("cannot open '" + path + "'");
        text << in.rdbuf();
    }
    return text.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::string rows_text(const std::vector<IntVec>& rows) {
    if (rows.empty()) return "(none)";
    std::string s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += ", ";
        s += vec_str(rows[i]);
    }
    return s;
}

void print_action_analysis(const char* name, const MatrixAction& a) {
    std::cout << name << ": torus dimension " << a.dim() << ", rank " << a.rank() << "\n";
    for (std::size_t j = 0; j < a.rank(); ++j)
        std::cout << "  generator " << j + 1 << ": k-index " << k_index(a.generator(j)) << "\n";
    std::cout << "  ergodic: " << (is_ergodic(a) ? "yes" : "no") << "\n";

    const RationalSubspace finite = finite_orbit_subspace(a);
    std::vector<IntVec> finite_rows;
    for (const RatVec& r : finite.basis()) finite_rows.push_back(primitive_integer(r));
    std::cout << "  finite-orbit subspace: rank " << finite.rank() << ", basis "
              << rows_text(finite_rows) << "\n";

    const LatticeBasis chars = finite_orbit_lattice(a.dual());
    std::cout << "  finite-orbit characters: rank " << chars.rank() << ", basis "
              << rows_text(chars.basis()) << "\n";

    const SubgroupLattice stabilizer = stabilizer_subgroup(a);
    std::cout << "  stabilizer subgroup: index " << stabilizer.index() << ", basis "
              << rows_text(stabilizer.lattice().basis()) << "\n";
}

int run_analyze(const std::string& input) {
    const SystemPair pair = parse_system(parse_text(read_input(input)));
    print_action_analysis("source", pair.source);
    print_action_analysis("target", pair.target);
    if (pair.factor)
        std::cout << "factor matrix: " << pair.factor->str() << "\n";
    return 0;
}

int run_decide(const std::string& input, const std::string& mode, const std::string& output) {
    const SystemPair pair = parse_system(parse_text(read_input(input)));
    DecisionReport report;
    if (mode == "exact") {
        report = decide_nonaffine(pair.source, pair.target);
    } else if (mode == "almost") {
        report = decide_almost(pair.source, pair.target);
    } else if (mode == "cyclic") {
        if (pair.source.rank() != 1) {
            std::cerr << "error: cyclic mode needs rank 1, document has rank "
                      << pair.source.rank() << "\n";
            return kExitPrecondition;
        }
        report = decide_cyclic(pair.source.generator(0), pair.target.generator(0));
    } else if (mode == "factor") {
        if (!pair.factor) {
            std::cerr << "error: factor mode needs a factor_matrix in the document\n";
            return kExitPrecondition;
        }
        report = decide_factor(pair.source, pair.target, *pair.factor);
    } else {
        std::cerr << "error: unknown mode '" << mode << "'\n";
        return kExitPrecondition;
    }
    write_output(output, canonical_dump(decision_to_json(report)));
    return 0;
}

int run_witness(const std::string& input, const std::string& output) {
    const SystemPair pair = parse_system(parse_text(read_input(input)));
    const DecisionReport report = decide_nonaffine(pair.source, pair.target);
    if (!report.exists_nonaffine) {
        std::cerr << "no nonaffine equivariant map exists (certificate "
                  << refusal_name(*report.refusal) << ")\n";
        return kExitNoWitness;
    }
    const WitnessSpec w = build_witness(pair.source, pair.target, report);
    write_output(output, canonical_dump(witness_to_json(w)));
    return 0;
}

int run_verify(const std::string& input, std::size_t samples, std::uint64_t seed, double tol,
               const std::string& output) {
    const WitnessSpec w = witness_from_json(parse_text(read_input(input)));
    const VerificationReport report = verify_witness(w, samples, seed, tol);
    write_output(output, canonical_dump(verification_to_json(report)));
    return report.pass ? 0 : kExitVerifyFailed;
}

int run_sample_map(const std::string& input, std::size_t grid, const std::string& output) {
    const WitnessSpec w = witness_from_json(parse_text(read_input(input)));
    const std::size_t m = w.source.dim();
    if (m > 2) {
        std::cerr << "error: grid sampling needs source dimension 1 or 2, witness has " << m
                  << "\n";
        return kExitGridDimension;
    }
    if (grid == 0) {
        std::cerr << "error: grid resolution must be positive\n";
        return kExitPrecondition;
    }
    std::ostringstream csv;
    std::vector<double> x(m, 0.0);
    const std::size_t total = m == 1 ? grid : grid * grid;
    for (std::size_t index = 0; index < total; ++index) {
        if (m == 1) {
            x[0] = static_cast<double>(index) / static_cast<double>(grid);
        } else {
            x[0] = static_cast<double>(index / grid) / static_cast<double>(grid);
            x[1] = static_cast<double>(index % grid) / static_cast<double>(grid);
        }
        const std::vector<double> fx = w.eval_map(x);
        bool first = true;
        for (double v : x) {
            if (!first) csv << ',';
            csv << format_double(v);
            first = false;
        }
        for (double v : fx) csv << ',' << format_double(v);
        csv << '\n';
    }
    write_output(output, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decision toolkit for nonaffine equivariant maps between toral systems"};
    app.require_subcommand(1);

    std::string analyze_input;
    CLI::App* analyze = app.add_subcommand("analyze", "print structure of a system document");
    analyze->add_option("input", analyze_input, "system document (JSON), - for stdin")->required();

    std::string decide_input;
    std::string decide_mode = "exact";
    std::string decide_output;
    CLI::App* decide = app.add_subcommand("decide", "decide existence of a nonaffine map");
    decide->add_option("input", decide_input, "system document (JSON), - for stdin")->required();
    decide->add_option("--mode", decide_mode, "exact|almost|cyclic|factor (default exact)")
        ->check(CLI::IsMember({"exact", "almost", "cyclic", "factor"}));
    decide->add_option("-o,--output", decide_output, "write the decision document here");

    std::string witness_input;
    std::string witness_output;
    CLI::App* witness = app.add_subcommand("witness", "construct an explicit witness map");
    witness->add_option("input", witness_input, "system document (JSON), - for stdin")->required();
    witness->add_option("-o,--output", witness_output, "write the witness document here");

    std::string verify_input;
    std::string verify_output;
    std::size_t verify_samples = kDefaultVerifySamples;
    std::uint64_t verify_seed = kDefaultVerifySeed;
    double verify_tol = kDefaultEquivarianceTol;
    CLI::App* verify = app.add_subcommand("verify", "re-verify a witness document numerically");
    verify->add_option("input", verify_input, "witness document (JSON), - for stdin")->required();
    verify->add_option("--samples", verify_samples, "random sample count (default 1000)")
        ->envname("RIGIDITY_SAMPLES");
    verify->add_option("--seed", verify_seed, "sampler seed (default 42)");
    verify->add_option("--tol", verify_tol, "equivariance tolerance (default 1e-9)");
    verify->add_option("-o,--output", verify_output, "write the verification document here");

    std::string sample_input;
    std::string sample_output;
    std::size_t sample_grid = 16;
    CLI::App* sample = app.add_subcommand("sample-map", "evaluate a witness on a uniform grid");
    sample->add_option("input", sample_input, "witness document (JSON), - for stdin")->required();
    sample->add_option("--grid", sample_grid, "points per axis (default 16)");
    sample->add_option("-o,--output", sample_output, "write CSV here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(analyze_input);
        if (decide->parsed()) return run_decide(decide_input, decide_mode, decide_output);
        if (witness->parsed()) return run_witness(witness_input, witness_output);
        if (verify->parsed())
            return run_verify(verify_input, verify_samples, verify_seed, verify_tol, verify_output);
        if (sample->parsed()) return run_sample_map(sample_input, sample_grid, sample_output);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Json::exception& e) {
        std::cerr << "error: invalid document: " << e.what() << "\n";
        return kExitParse;
    } catch (const RankMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const NotEquivariant& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const NotSurjective& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
