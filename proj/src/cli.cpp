#include "multiplet/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "multiplet/analysis.hpp"
#include "multiplet/classify.hpp"
#include "multiplet/constructions.hpp"
#include "multiplet/errors.hpp"
#include "multiplet/gradcheck.hpp"
#include "multiplet/parallel.hpp"
#include "multiplet/serialize.hpp"
#include "multiplet/softlogic.hpp"
#include "multiplet/tasks.hpp"

namespace multiplet {

namespace {

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string join_fixed(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_double(v[i]);
    }
    return s;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write " + path);
    return f;
}

// ---- tables ---------------------------------------------------------------

struct XorOpts {
    std::string table = "all";
    double p_or = 7.0;
    double p_and = -3.0;
    double epsilon = 1e-6;
};

void print_duet_table(std::ostream& out, const std::string& title, const LogicConfig& cfg,
                      double lo, double hi) {
    out << "# " << title << '\n' << "x1,x2,sigma1,sigma2,chi\n";
    for (double a : {lo, hi})
        for (double b : {lo, hi}) {
            const GScalar x[2] = {GScalar(a), GScalar(b)};
            const DuetSinglet r = xor_duet_singlet(x, cfg);
            out << format_double(a) << ',' << format_double(b) << ',' << fixed4(r.sigma1.re())
                << ',' << fixed4(r.sigma2.re()) << ',' << fixed4(r.chi.re()) << '\n';
        }
}

int cmd_xor(const XorOpts& o, std::ostream& out) {
    if (o.table != "all" && o.table != "real" && o.table != "shifted" && o.table != "complex")
        throw InvalidArgument("--table must be real, shifted, complex or all");
    LogicConfig cfg{1.0, o.p_or, o.p_and, o.epsilon};
    cfg.validate();
    bool first = true;
    auto sep = [&] {
        if (!first) out << '\n';
        first = false;
    };
    if (o.table == "all" || o.table == "real") {
        sep();
        print_duet_table(out, "real XOR duet-singlet, T=1", cfg, 0.01, 0.99);
    }
    if (o.table == "all" || o.table == "shifted") {
        sep();
        LogicConfig c3 = cfg;
        c3.T = 3.0;
        print_duet_table(out, "XOR on [1,2], T=3", c3, 1.0, 2.0);
    }
    if (o.table == "all" || o.table == "complex") {
        sep();
        out << "# complex-lifted XOR duet-singlet, T=1, epsilon=" << format_double(cfg.epsilon)
            << '\n'
            << "x1,x2,chi,chi_im\n";
        for (double a : {0.0, 1.0})
            for (double b : {0.0, 1.0}) {
                const GScalar x[2] = {GScalar(a), GScalar(b)};
                const ElementVector z = complex_lift(x, cfg.epsilon);
                const GScalar chi = xor_duet_singlet(z, cfg).chi;
                char im[64];
                std::snprintf(im, sizeof im, "%.3e", chi.im());
                out << fixed4(a) << ',' << fixed4(b) << ',' << fixed4(chi.re()) << ',' << im
                    << '\n';
            }
    }
    return 0;
}

const std::vector<std::vector<double>> kXnorRows = {{0.85, 0.9, 0.94, 0.99},
                                                    {0.01, 0.1, 0.12, 0.2},
                                                    {0.1, 0.85, 0.9, 0.94},
                                                    {0.1, 0.3, 0.7, 0.9},
                                                    {0.4, 0.5, 0.6, 0.7}};

int cmd_xnor(double p_or, double p_and, std::ostream& out) {
    LogicConfig cfg{1.0, p_or, p_and, 1e-6};
    cfg.validate();
    out << "# XNOR compositions, p_or=" << format_double(p_or)
        << " p_and=" << format_double(p_and) << '\n'
        << "x1,x2,x3,x4,I,II\n";
    for (const auto& row : kXnorRows) {
        const ElementVector x = to_elements(row);
        out << join_fixed(row) << ',' << fixed4(xnor_i(x, cfg).re()) << ','
            << fixed4(xnor_ii(x, cfg).re()) << '\n';
    }
    return 0;
}

const std::vector<std::vector<double>> kIntervalRows = {
    {0.01, 0.1, 0.12, 0.2}, {0.8, 0.85, 0.9, 0.95}, {0.05, 0.75, 0.9, 0.95},
    {0.5, 0.8, 0.9, 0.99},  {0.1, 0.2, 0.3, 0.4},   {0.4, 0.5, 0.55, 0.6}};

int cmd_interval(double eps, double p_or, double p_and, std::ostream& out) {
    LogicConfig cfg{1.0, p_or, p_and, 1e-6};
    cfg.validate();
    out << "# interval estimate, eps=" << format_double(eps) << " p_or=" << format_double(p_or)
        << " p_and=" << format_double(p_and) << '\n'
        << "x1,x2,x3,x4,eps_or_x,eps_or_not_x,out\n";
    for (const auto& row : kIntervalRows) {
        ElementVector a{GScalar(eps)}, b{GScalar(eps)};
        for (double v : row) {
            a.emplace_back(v);
            b.push_back(neg(GScalar(v), cfg));
        }
        out << join_fixed(row) << ',' << fixed4(disj(a, cfg).re()) << ','
            << fixed4(disj(b, cfg).re()) << ','
            << fixed4(interval_estimate(to_elements(row), eps, cfg).re()) << '\n';
    }
    return 0;
}

const std::vector<std::vector<double>> kCssRows = {{-0.78, -0.9, -0.85, -0.75},
                                                   {0.18, 0.2, 0.12, 0.11},
                                                   {-0.9, -0.5, 0.9, 0.49},
                                                   {1.0, -0.9, -0.9, 0.11},
                                                   {0.4, 0.4, 0.45, 0.41}};

int cmd_css(std::ostream& out) {
    out << "# case slope score, weights all 1\n"
        << "x1,x2,x3,x4,nu,nu0\n";
    for (const auto& row : kCssRows) {
        const ElementVector z = to_elements(row);
        const std::vector<double> w(z.size(), 1.0);
        out << join_fixed(row) << ',' << fixed4(case_slope_score(z, w, true)) << ','
            << fixed4(case_slope_score(z, w, false)) << '\n';
    }
    return 0;
}

// ---- surfaces -------------------------------------------------------------

struct SurfaceOpts {
    std::string kind;
    std::string out;
    std::size_t res = 51;
    double lo = 0.0, hi = 1.0;
    std::optional<double> x3;
    double w3 = 1.0;
    double p_lo = -4.0, p_hi = 8.0, q_lo = -2.0, q_hi = 7.0;
    std::vector<double> input = {0.1, 0.3, 0.5, 0.7, 0.9};
    std::string dist = "left";
    std::size_t n = 64;
    std::uint64_t seed = 7;
    double w1 = 1.0, w2 = 0.25, m = 50.0, b = 0.0, p = 2.0, q = 2.0, L = 1.0;
    double range_lo = -10.0, range_hi = 10.0;
};

int cmd_surface(const SurfaceOpts& o) {
    SurfaceGrid g;
    std::vector<CsvColumn> constants;
    std::string value_name = "value";
    bool degenerate_col = true;
    if (o.kind == "xor") {
        LogicConfig cfg;
        std::optional<ThirdElement> third;
        if (o.x3) {
            third = ThirdElement{*o.x3, o.w3};
            constants = {{"x3", *o.x3}, {"w3", o.w3}};
            value_name = "delta";
        } else {
            value_name = "chi";
        }
        g = xor_surface({o.res, o.lo, o.hi}, cfg, third);
        degenerate_col = false;
    } else if (o.kind == "pq") {
        g = pq_surface(to_elements(o.input), {o.p_lo, o.p_hi}, {o.q_lo, o.q_hi}, o.res);
    } else if (o.kind == "codep") {
        g = codependence_surface(to_elements(o.input), {o.p_lo, o.p_hi}, {o.p_lo, o.p_hi}, o.res);
        value_name = "log_abs_c";
    } else if (o.kind == "ratio") {
        std::vector<double> test;
        if (o.dist == "left") test = beta_sample(5.0, 2.0, o.n, o.seed);
        else if (o.dist == "right") test = beta_sample(2.0, 5.0, o.n, o.seed);
        else throw InvalidArgument("--dist must be left or right");
        const auto ref = normal_sample(0.5, 0.15, o.n, o.seed + 1);
        g = surface_ratio(to_elements(test), to_elements(ref), {o.p_lo, o.p_hi}, {o.q_lo, o.q_hi},
                          o.res);
    } else if (o.kind == "perceptron") {
        Multiplet mult;
        mult.w = {o.w1, o.w2};
        mult.L = o.L;
        mult.neurons = {{o.m, o.b, o.p, o.q}};
        g = perceptron_surface(mult, {o.range_lo, o.range_hi}, o.res);
    } else {
        throw InvalidArgument("--kind must be xor, pq, codep, ratio or perceptron");
    }
    auto f = open_out(o.out);
    write_surface_csv(g, f, value_name, constants, degenerate_col);
    return 0;
}

// ---- gradient check -------------------------------------------------------

int cmd_gradcheck(std::size_t trials, std::size_t net_trials, std::uint64_t seed, double tol,
                  double net_tol, std::ostream& out) {
    auto line = [&](const char* name, const GradCheckReport& r) {
        out << name << ": trials=" << r.trials << " failures=" << r.failures
            << " max_rel w=" << format_double(r.max_w) << " m=" << format_double(r.max_m)
            << " b=" << format_double(r.max_b) << " p=" << format_double(r.max_p)
            << " q=" << format_double(r.max_q) << " x=" << format_double(r.max_x) << '\n';
    };
    const auto a = check_neuron_gradients({trials, seed, 1e-4, tol});
    line("neuron", a);
    GradCheckReport b;
    if (net_trials > 0) {
        b = check_network_gradients({net_trials, seed, 1e-4, net_tol});
        line("network", b);
    }
    const bool ok = a.ok() && b.ok();
    out << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

// ---- builders -------------------------------------------------------------

struct BuildOpts {
    std::string what;
    std::string name = "exp";
    std::size_t order = 4;
    double a = 1.0, r = 0.5;
    std::size_t n = 4;
    double a0 = 1.0, a1 = 0.5, a2 = 1.0 / 12.0, b1 = -0.5, b2 = 1.0 / 12.0;
    double lo = 0.0, hi = 1.0;
    std::string variant = "laurent";
    std::string out;
};

int cmd_build(const BuildOpts& o, std::ostream& out) {
    NetworkGraph net;
    if (o.what == "series") {
        net = build_power_series(build_named_series(o.name, o.order, o.a, o.r));
    } else if (o.what == "prodtree") {
        net = build_product_tree(o.n);
    } else if (o.what == "division") {
        net = build_division();
    } else if (o.what == "pade") {
        net = build_pade_22({o.a0, o.a1, o.a2, o.b1, o.b2}, o.lo, o.hi);
    } else if (o.what == "softplus") {
        if (o.variant == "power") net = softplus_series(SoftplusVariant::PowerSeries);
        else if (o.variant == "laurent") net = softplus_series(SoftplusVariant::LaurentCombo);
        else throw InvalidArgument("--variant must be power or laurent");
    } else {
        throw InvalidArgument("--what must be series, prodtree, division, pade or softplus");
    }
    const std::string text = dump_json(nlohmann::json(net));
    if (o.out.empty()) {
        out << text;
    } else {
        auto f = open_out(o.out);
        f << text;
    }
    return 0;
}

int cmd_eval(const std::string& model, const std::vector<double>& input,
             std::optional<double> lift, int precision, std::ostream& out) {
    const NetworkGraph net = load_network(model);
    ElementVector x = to_elements(input);
    if (lift) x = complex_lift(x, *lift);
    const ElementVector y = forward_network(net, x);
    for (const auto& v : y) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", precision, v.re());
        out << buf;
        if (!v.is_real()) {
            std::snprintf(buf, sizeof buf, "%+.*gi", precision, v.im());
            out << buf;
        }
        out << '\n';
    }
    return 0;
}

// ---- training -------------------------------------------------------------

std::size_t trainable_count(const NetworkGraph& net, const TrainConfig& cfg) {
    std::size_t n = 0;
    for (const auto& layer : net.layers)
        for (const auto& node : layer) {
            n += node.multiplet.w.size();
            const std::size_t per = 2 + (cfg.rates.p > 0 ? 1 : 0) + (cfg.rates.q > 0 ? 1 : 0);
            n += per * node.multiplet.neurons.size();
        }
    return n;
}

struct TrainOpts {
    std::string task;
    std::optional<std::size_t> epochs;
    double lambda = 0.05;
    bool css = false;
    std::uint64_t seed = 42;
    std::size_t batch = 0;
    std::string history;
    std::string model_out;
    std::string iris = "data/iris.csv";
};

int cmd_train(const TrainOpts& o, std::ostream& out) {
    TrainConfig cfg;
    cfg.lambda = o.lambda;
    cfg.css_modulation = o.css;
    cfg.seed = o.seed;
    cfg.batch_size = o.batch;
    NetworkGraph net;
    std::vector<Sample> data;
    if (o.task == "xor") {
        net = xor_network();
        data = xor_dataset();
        cfg.epochs = o.epochs.value_or(5000);
    } else if (o.task == "iris") {
        net = iris_network();
        data = iris_samples(load_iris(o.iris));
        cfg.epochs = o.epochs.value_or(3000);
    } else {
        throw InvalidArgument("--task must be xor or iris");
    }
    initialize_parameters(net, o.seed);
    const TrainHistory h = train(net, data, cfg);
    if (!o.history.empty()) {
        auto f = open_out(o.history);
        write_history_csv(h, f);
    }
    if (!o.model_out.empty()) save_network(net, o.model_out);
    out << "task=" << o.task << " epochs=" << cfg.epochs
        << " final_mse=" << format_double(mean_squared_error(net, data))
        << " params=" << net.param_count() << " trainable=" << trainable_count(net, cfg);
    if (o.task == "iris") out << " misclassified=" << count_misclassified(net, data);
    out << '\n';
    return 0;
}

// ---- classification -------------------------------------------------------

struct DataOpts {
    std::string train, labels, test, test_labels;
    std::size_t subsample = 2000;
    std::size_t test_subsample = 500;
    std::uint64_t seed = 1;
    bool full = false;
    std::string report;
};

std::pair<LabeledVectorSet, LabeledVectorSet> load_data(const DataOpts& o) {
    LabeledVectorSet tr = make_labeled_set(read_idx_images(o.train), read_idx_labels(o.labels));
    LabeledVectorSet te = make_labeled_set(read_idx_images(o.test), read_idx_labels(o.test_labels));
    if (!o.full) {
        tr = subsample(tr, o.subsample, o.seed);
        te = subsample(te, o.test_subsample, o.seed + 1);
    }
    return {std::move(tr), std::move(te)};
}

ProgressFn progress_for(bool full, std::ostream& err) {
    if (!full) return {};
    return [&err](std::size_t done, std::size_t total) {
        err << "progress " << done << '/' << total << '\n';
    };
}

int emit_report(const AccuracyReport& r, const DataOpts& o, std::ostream& out) {
    nlohmann::json j = report_to_json(r);
    j["config"]["seed"] = o.seed;
    j["config"]["full"] = o.full;
    const std::string text = dump_json(j);
    out << text;
    if (!o.report.empty()) {
        auto f = open_out(o.report);
        f << text;
    }
    return 0;
}

void add_data_flags(CLI::App* sub, DataOpts& d) {
    sub->add_option("--train", d.train, "training images (IDX)")->required();
    sub->add_option("--labels", d.labels, "training labels (IDX)")->required();
    sub->add_option("--test", d.test, "test images (IDX)")->required();
    sub->add_option("--test-labels", d.test_labels, "test labels (IDX)")->required();
    sub->add_option("--subsample", d.subsample, "training items kept");
    sub->add_option("--test-subsample", d.test_subsample, "test items kept");
    sub->add_option("--seed", d.seed, "subsampling seed");
    sub->add_flag("--full", d.full, "use every item, with progress on stderr");
    sub->add_option("--report", d.report, "also write the JSON report here");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiplet neuron toolkit"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file whose values act as flags");
    app.allow_config_extras(false);

    std::size_t threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0: MULTIPLET_THREADS or all cores)");

    XorOpts xo;
    auto* xor_cmd = app.add_subcommand("xor", "print the XOR duet-singlet tables");
    xor_cmd->add_option("--table", xo.table, "real, shifted, complex or all");
    xor_cmd->add_option("--p-or", xo.p_or);
    xor_cmd->add_option("--p-and", xo.p_and);
    xor_cmd->add_option("--epsilon", xo.epsilon, "imaginary lift for the complex table");

    double xn_or = 5.0, xn_and = -3.0;
    auto* xnor_cmd = app.add_subcommand("xnor", "print the XNOR composition table");
    xnor_cmd->add_option("--p-or", xn_or);
    xnor_cmd->add_option("--p-and", xn_and);

    double iv_eps = 1e-4, iv_or = 9.0, iv_and = -3.0;
    auto* interval_cmd = app.add_subcommand("interval", "print the interval-estimate table");
    interval_cmd->add_option("--eps", iv_eps);
    interval_cmd->add_option("--p-or", iv_or);
    interval_cmd->add_option("--p-and", iv_and);

    auto* css_cmd = app.add_subcommand("css", "print the case slope score table");

    SurfaceOpts so;
    auto* surf = app.add_subcommand("surface", "export a sampled surface as CSV");
    surf->add_option("--kind", so.kind, "xor, pq, codep, ratio or perceptron")->required();
    surf->add_option("--out", so.out, "CSV path")->required();
    surf->add_option("--res", so.res, "samples per axis");
    surf->add_option("--lo", so.lo, "xor axis start");
    surf->add_option("--hi", so.hi, "xor axis end");
    surf->add_option("--x3", so.x3, "xor: fixed third element (switches to delta output)");
    surf->add_option("--w3", so.w3, "xor: weight of the third element");
    surf->add_option("--p-lo", so.p_lo);
    surf->add_option("--p-hi", so.p_hi);
    surf->add_option("--q-lo", so.q_lo);
    surf->add_option("--q-hi", so.q_hi);
    surf->add_option("--input", so.input, "pq/codep: element vector")->delimiter(',');
    surf->add_option("--dist", so.dist, "ratio: left or right skewed test sample");
    surf->add_option("--n", so.n, "ratio: sample size");
    surf->add_option("--seed", so.seed, "ratio: sampling seed");
    surf->add_option("--w1", so.w1);
    surf->add_option("--w2", so.w2);
    surf->add_option("--m", so.m);
    surf->add_option("--b", so.b);
    surf->add_option("--p", so.p);
    surf->add_option("--q", so.q);
    surf->add_option("--L", so.L);
    surf->add_option("--range-lo", so.range_lo, "perceptron: axis start");
    surf->add_option("--range-hi", so.range_hi, "perceptron: axis end");

    std::size_t gc_trials = 1000, gc_net = 100;
    std::uint64_t gc_seed = 1;
    double gc_tol = 1e-6, gc_net_tol = 1e-5;
    auto* grad = app.add_subcommand("gradcheck", "compare analytic partials to finite differences");
    grad->add_option("--trials", gc_trials, "random single-neuron instances");
    grad->add_option("--net-trials", gc_net, "random two-layer networks");
    grad->add_option("--seed", gc_seed);
    grad->add_option("--tol", gc_tol, "relative tolerance for neurons");
    grad->add_option("--net-tol", gc_net_tol, "relative tolerance through networks");

    BuildOpts bo;
    auto* build = app.add_subcommand("build", "emit a constructed network as JSON");
    build->add_option("--what", bo.what, "series, prodtree, division, pade or softplus")->required();
    build->add_option("--name", bo.name, "series: exp, ln1p, geometric, triangular_diff, ln1p_at_infinity, inverse");
    build->add_option("--order", bo.order, "series truncation order");
    build->add_option("--a", bo.a, "geometric: leading coefficient");
    build->add_option("--r", bo.r, "geometric: ratio");
    build->add_option("--n", bo.n, "prodtree: inputs (power of two)");
    build->add_option("--a0", bo.a0);
    build->add_option("--a1", bo.a1);
    build->add_option("--a2", bo.a2);
    build->add_option("--b1", bo.b1);
    build->add_option("--b2", bo.b2);
    build->add_option("--lo", bo.lo, "pade: interval start");
    build->add_option("--hi", bo.hi, "pade: interval end");
    build->add_option("--variant", bo.variant, "softplus: power or laurent");
    build->add_option("--out", bo.out, "write here instead of stdout");

    std::string ev_model;
    std::vector<double> ev_input;
    std::optional<double> ev_lift;
    int ev_precision = 12;
    auto* eval = app.add_subcommand("eval", "evaluate a model JSON on one input");
    eval->add_option("--model", ev_model)->required();
    eval->add_option("--input", ev_input)->required()->delimiter(',');
    eval->add_option("--lift", ev_lift, "complex-lift the input by this epsilon");
    eval->add_option("--precision", ev_precision, "significant digits printed");

    TrainOpts to;
    auto* trn = app.add_subcommand("train", "train a demo network");
    trn->add_option("--task", to.task, "xor or iris")->required();
    trn->add_option("--epochs", to.epochs, "default 5000 (xor) / 3000 (iris)");
    trn->add_option("--lambda", to.lambda, "learning rate");
    trn->add_flag("--css", to.css, "modulate weight steps by the case slope score");
    trn->add_option("--seed", to.seed);
    trn->add_option("--batch", to.batch, "minibatch size (0: full batch)");
    trn->add_option("--history", to.history, "CSV path for epoch,loss,mean_nu");
    trn->add_option("--model-out", to.model_out, "JSON path for the trained model");
    trn->add_option("--iris", to.iris, "iris CSV path");

    DataOpts ko;
    NnConfig nn;
    auto* knn = app.add_subcommand("knn", "Lehmer-mean 1-NN over IDX data");
    add_data_flags(knn, ko);
    knn->add_option("--p", nn.p);
    knn->add_option("--L", nn.L);

    DataOpts io;
    InsideOutsideConfig ioc;
    auto* inout = app.add_subcommand("inout", "inside-outside XNOR classifier over IDX data");
    add_data_flags(inout, io);
    inout->add_option("--threshold", ioc.threshold);
    inout->add_option("--topk", ioc.top_k);
    inout->add_option("--p-or", ioc.p_or);
    inout->add_option("--p-and", ioc.p_and);
    inout->add_option("--L", ioc.L);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    set_max_threads(threads);
    for (const auto* sub : app.get_subcommands()) {
        err << "# config [" << sub->get_name() << "] threads=" << max_threads() << '\n';
        std::istringstream cfg(sub->config_to_str(true, false));
        for (std::string line; std::getline(cfg, line);)
            if (!line.empty()) err << "#   " << line << '\n';
    }

    try {
        if (xor_cmd->parsed()) return cmd_xor(xo, out);
        if (xnor_cmd->parsed()) return cmd_xnor(xn_or, xn_and, out);
        if (interval_cmd->parsed()) return cmd_interval(iv_eps, iv_or, iv_and, out);
        if (css_cmd->parsed()) return cmd_css(out);
        if (surf->parsed()) return cmd_surface(so);
        if (grad->parsed()) return cmd_gradcheck(gc_trials, gc_net, gc_seed, gc_tol, gc_net_tol, out);
        if (build->parsed()) return cmd_build(bo, out);
        if (eval->parsed()) return cmd_eval(ev_model, ev_input, ev_lift, ev_precision, out);
        if (trn->parsed()) return cmd_train(to, out);
        if (knn->parsed()) {
            auto [tr, te] = load_data(ko);
            return emit_report(lehmer_1nn(tr, te, nn, progress_for(ko.full, err)), ko, out);
        }
        if (inout->parsed()) {
            auto [tr, te] = load_data(io);
            return emit_report(inside_outside(tr, te, ioc, progress_for(io.full, err)), io, out);
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const UnknownName& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace multiplet
