// ppmzero: construct, sweep, simulate, verify and brute-force zero-error
// PPM codes for channels with clock drift and timing jitter.

#include <iostream>

#include "CLI11.hpp"
#include "ppmzero/cli.hpp"

int main(int argc, char** argv)
{
    using namespace ppmzero::cli;

    CLI::App app{"Zero-error PPM codes under clock drift and timing jitter"};
    app.require_subcommand(1);

    ConstructOptions construct;
    auto* c = app.add_subcommand("construct", "Build a codebook and report its size and rate");
    c->add_option("--k", construct.k, "Pulses per frame")->required();
    c->add_option("--M", construct.frame, "Bins per frame")->required();
    c->add_option("--xi", construct.xi, "Jitter ratio (p/q, decimal)")->capture_default_str();
    c->add_option("--gamma", construct.gamma, "Drift ratio (p/q, decimal or inf)")->capture_default_str();
    c->add_option("--regime", construct.regime,
                  "gcd | bounded-drift | jitter | jitter-unbounded-drift | jitter-bounded-drift | perfect-sync");
    c->add_option("--out", construct.out, "Write the codebook file here");

    SweepOptions sweep;
    auto* s = app.add_subcommand("sweep", "Codebook size and rate over a parameter grid, as CSV");
    s->add_option("--param", sweep.param, "gamma | xi | M")->required();
    s->add_option("--values", sweep.values, "Comma list or start:stop:step")->required();
    s->add_option("--k", sweep.k)->capture_default_str();
    s->add_option("--M", sweep.frame)->capture_default_str();
    s->add_option("--xi", sweep.xi)->capture_default_str();
    s->add_option("--gamma", sweep.gamma)->capture_default_str();
    s->add_option("--regime", sweep.regime, "Force one construction for every grid point");
    s->add_option("--csv", sweep.csv, "Output path (standard output when omitted)");

    SimulateOptions simulate;
    auto* m = app.add_subcommand("simulate", "Transmit and decode codewords through sampled channels");
    m->add_option("--code", simulate.code, "Codebook file")->required();
    m->add_option("--trials", simulate.trials, "Trial count (endpoints default: all codewords x corners)");
    m->add_option("--seed", simulate.seed)->capture_default_str();
    m->add_option("--mode", simulate.mode, "endpoints | uniform")->capture_default_str();
    m->add_option("--t-cap", simulate.drift_cap, "Upper drift corner when gamma=inf")->capture_default_str();
    m->add_flag("--float", simulate.floating, "Decode double-precision observations");
    m->add_option("--threads", simulate.threads, "Worker threads (0 = all cores)")->capture_default_str();

    VerifyOptions verify;
    auto* v = app.add_subcommand("verify", "List codeword pairs that are not distinguishable");
    v->add_option("--code", verify.code, "Codebook file")->required();
    v->add_option("--xi", verify.xi, "Override the file's xi");
    v->add_option("--gamma", verify.gamma, "Override the file's gamma");

    OracleOptions oracle;
    auto* o = app.add_subcommand("oracle", "Maximum independent set of the confusion graph");
    o->add_option("--k", oracle.k)->required();
    o->add_option("--M", oracle.frame)->required();
    o->add_option("--xi", oracle.xi)->capture_default_str();
    o->add_option("--gamma", oracle.gamma)->capture_default_str();
    o->add_option("--budget-seconds", oracle.budget_seconds)->capture_default_str();
    o->add_option("--out", oracle.out, "Write the optimal codebook here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (*c)
        return run_construct(construct, std::cout, std::cerr);
    if (*s)
        return run_sweep(sweep, std::cout, std::cerr);
    if (*m)
        return run_simulate(simulate, std::cout, std::cerr);
    if (*v)
        return run_verify(verify, std::cout, std::cerr);
    return run_oracle(oracle, std::cout, std::cerr);
}
