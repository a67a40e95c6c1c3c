// Command-line front end. Everything goes through the C API in linca.h.

#include "linca/linca.h"

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitValidation = 2;

struct RuleDeleter {
    void operator()(linca_rule* p) const { linca_rule_free(p); }
};
struct CylinderDeleter {
    void operator()(linca_cylinder* p) const { linca_cylinder_free(p); }
};
struct MeasureDeleter {
    void operator()(linca_measure* p) const { linca_measure_free(p); }
};
struct StringDeleter {
    void operator()(char* p) const { linca_string_free(p); }
};
using Rule = std::unique_ptr<linca_rule, RuleDeleter>;
using Cyl = std::unique_ptr<linca_cylinder, CylinderDeleter>;
using Measure = std::unique_ptr<linca_measure, MeasureDeleter>;

class Failure {
public:
    explicit Failure(linca_status s) : status(s), message(linca_last_error()) {}
    Failure(linca_status s, std::string msg) : status(s), message(std::move(msg)) {}
    linca_status status;
    std::string message;
};

void check(linca_status s) {
    if (s != LINCA_OK) throw Failure(s);
}

std::string take(char* s) {
    std::unique_ptr<char, StringDeleter> holder(s);
    return std::string(s);
}

Rule load(const std::string& path) {
    linca_rule* r = nullptr;
    check(linca_rule_load(path.c_str(), &r));
    return Rule(r);
}

Cyl cylinder(const std::string& text) {
    linca_cylinder* c = nullptr;
    check(linca_cylinder_parse(text.c_str(), &c));
    return Cyl(c);
}

std::string render(const linca_rule* r) {
    char* s = nullptr;
    check(linca_rule_render(r, &s));
    return take(s);
}

std::string render_poly(const linca_rule* r) {
    char* s = nullptr;
    check(linca_rule_render_polynomial(r, &s));
    return take(s);
}

std::string render(const linca_measure* mu) {
    char* s = nullptr;
    check(linca_measure_render(mu, &s));
    return take(s);
}

std::string numerator_at(const linca_measure* mu, std::uint64_t e) {
    char* s = nullptr;
    check(linca_measure_numerator_at(mu, e, &s));
    return take(s);
}

std::string factor_string(std::uint64_t m) {
    std::ostringstream os;
    bool first = true;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        unsigned k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        os << (first ? "" : "*") << p;
        if (k > 1) os << '^' << k;
        first = false;
    }
    if (m > 1) os << (first ? "" : "*") << m;
    return os.str();
}

Measure correlation(const linca_rule* r, std::int64_t n, const linca_cylinder* U, const linca_cylinder* V) {
    linca_measure* mu = nullptr;
    check(linca_correlation(r, n, U, V, &mu));
    return Measure(mu);
}

Measure product_target(const linca_rule* r, const linca_cylinder* U, const linca_cylinder* V) {
    linca_measure *a = nullptr, *b = nullptr, *ab = nullptr;
    check(linca_cylinder_measure(U, linca_rule_modulus(r), &a));
    Measure ma(a);
    check(linca_cylinder_measure(V, linca_rule_modulus(r), &b));
    Measure mb(b);
    check(linca_measure_product(a, b, &ab));
    return Measure(ab);
}

// ---- commands

int cmd_analyze(const std::string& path, const std::string& u, const std::string& v) {
    Rule r = load(path);
    Cyl U, V;
    if (!u.empty() && !v.empty()) {
        U = cylinder(u);
        V = cylinder(v);
    }
    char* report = nullptr;
    check(linca_classify_report(r.get(), U.get(), V.get(), &report));
    std::cout << "rule=" << render(r.get()) << '\n'
              << "polynomial=" << render_poly(r.get()) << '\n'
              << "m=" << linca_rule_modulus(r.get()) << '\n'
              << "factors=" << factor_string(linca_rule_modulus(r.get())) << '\n'
              << take(report);
    return kExitOk;
}

int cmd_invert(const std::string& path) {
    Rule r = load(path);
    linca_rule *inv = nullptr, *comp = nullptr;
    check(linca_rule_inverse(r.get(), &inv));
    Rule ri(inv);
    check(linca_rule_compose(r.get(), ri.get(), &comp));
    Rule rc(comp);
    bool identity = linca_rule_left(rc.get()) == 0 && linca_rule_right(rc.get()) == 0 && linca_rule_coeff(rc.get(), 0) == 1;
    std::cout << "rule=" << render(r.get()) << '\n'
              << "inverse=" << render(ri.get()) << '\n'
              << "inverse_polynomial=" << render_poly(ri.get()) << '\n'
              << "composition_is_identity=" << (identity ? "true" : "false") << '\n';
    return identity ? kExitOk : kExitComputation;
}

int cmd_iterate(const std::string& path, std::int64_t n) {
    Rule r = load(path);
    linca_rule* it = nullptr;
    check(linca_rule_iterate(r.get(), n, &it));
    Rule ri(it);
    std::cout << "rule=" << render(r.get()) << '\n'
              << "n=" << n << '\n'
              << "iterate=" << render(ri.get()) << '\n'
              << "iterate_polynomial=" << render_poly(ri.get()) << '\n';
    return kExitOk;
}

int cmd_correlate(const std::string& path, const std::string& u, const std::string& v, std::int64_t nmax) {
    if (nmax < 0) throw Failure(LINCA_ERR_INVALID_ARGUMENT, "--nmax must be >= 0");
    Rule r = load(path);
    Cyl U = cylinder(u), V = cylinder(v);
    Measure target = product_target(r.get(), U.get(), V.get());

    linca_verdict verdict{};
    check(linca_classify(r.get(), &verdict));
    std::cout << "# rule=" << render(r.get()) << '\n';
    if (verdict.kind == LINCA_VERDICT_BERNOULLI_STRONG_MIXING) {
        std::int64_t horizon = 0;
        check(linca_mixing_horizon(r.get(), U.get(), V.get(), &horizon));
        std::cout << "# horizon=" << horizon << '\n';
    } else {
        std::cout << "# horizon=none\n";
    }
    std::cout << "n\tnumerator\tdenominator_exponent\tproduct_target_numerator\tequal\n";
    const std::uint64_t target_exp = linca_measure_exponent(target.get());
    for (std::int64_t n = 0; n <= nmax; ++n) {
        Measure mu = correlation(r.get(), n, U.get(), V.get());
        std::uint64_t e = std::max<std::uint64_t>(linca_measure_exponent(mu.get()), target_exp);
        std::cout << n << '\t' << numerator_at(mu.get(), e) << '\t' << e << '\t' << numerator_at(target.get(), e)
                  << '\t' << (linca_measure_compare(mu.get(), target.get()) == 0 ? "true" : "false") << '\n';
    }
    return kExitOk;
}

int cmd_kmix(const std::string& path, const std::vector<std::int64_t>& gaps, const std::vector<std::string>& cyl_texts) {
    Rule r = load(path);
    std::vector<Cyl> owned;
    std::vector<const linca_cylinder*> raw;
    for (const auto& t : cyl_texts) {
        owned.push_back(cylinder(t));
        raw.push_back(owned.back().get());
    }
    linca_measure* mu = nullptr;
    check(linca_correlation_multi(r.get(), gaps.data(), gaps.size(), raw.data(), raw.size(), &mu));
    Measure joint(mu);

    Measure product;
    for (const auto* c : raw) {
        linca_measure* part = nullptr;
        check(linca_cylinder_measure(c, linca_rule_modulus(r.get()), &part));
        Measure mpart(part);
        if (!product) {
            product = std::move(mpart);
            continue;
        }
        linca_measure* next = nullptr;
        check(linca_measure_product(product.get(), mpart.get(), &next));
        product.reset(next);
    }
    std::cout << "rule=" << render(r.get()) << '\n'
              << "measure=" << render(joint.get()) << '\n'
              << "product=" << render(product.get()) << '\n'
              << "equal=" << (linca_measure_compare(joint.get(), product.get()) == 0 ? "true" : "false") << '\n';
    return kExitOk;
}

int cmd_bernoulli(const std::string& path, std::int64_t ell, std::int64_t n, std::optional<std::int64_t> N,
                  std::uint64_t budget) {
    Rule r = load(path);
    std::string source = "flag";
    std::int64_t sep = 0;
    if (N) {
        sep = *N;
    } else {
        check(linca_separation_time(r.get(), ell, &sep));
        source = "formula";
    }
    linca_measure* mu = nullptr;
    check(linca_independence_defect(r.get(), ell, n, sep, budget, &mu));
    Measure defect(mu);
    std::cout << "rule=" << render(r.get()) << '\n'
              << "ell=" << ell << '\n'
              << "n=" << n << '\n'
              << "N=" << sep << '\n'
              << "N.source=" << source << '\n';
    if (source == "formula") std::cout << "N.note=uses |j_p|, maximized over prime factors\n";
    std::cout << "defect=" << render(defect.get()) << '\n'
              << "independent=" << (defect && render(defect.get()) == "0" ? "true" : "false") << '\n';
    return kExitOk;
}

int cmd_spacetime(const std::string& path, const std::vector<std::uint64_t>& seed, std::int64_t steps,
                  std::int64_t width) {
    Rule r = load(path);
    const std::uint64_t m = linca_rule_modulus(r.get());
    if (m > 16) throw Failure(LINCA_ERR_INVALID_ARGUMENT, "spacetime rendering supports m <= 16 only");
    if (steps < 0) throw Failure(LINCA_ERR_INVALID_ARGUMENT, "--steps must be >= 0");
    if (seed.empty()) throw Failure(LINCA_ERR_INVALID_ARGUMENT, "--seed needs at least one cell");
    std::size_t n = width > 0 ? static_cast<std::size_t>(width) : seed.size();
    if (n < seed.size()) throw Failure(LINCA_ERR_INVALID_ARGUMENT, "--width is smaller than the seed");
    std::vector<std::uint64_t> cells(n, 0);
    const std::size_t offset = (n - seed.size()) / 2;
    for (std::size_t i = 0; i < seed.size(); ++i) cells[offset + i] = seed[i];

    static constexpr char digits[] = "0123456789abcdef";
    auto print_row = [&] {
        for (auto c : cells) std::cout << digits[c];
        std::cout << '\n';
    };
    // Validate the seed against m before printing the first row.
    std::vector<std::uint64_t> next(n);
    if (steps == 0) {
        check(linca_rule_apply(r.get(), cells.data(), n, next.data()));
        print_row();
        return kExitOk;
    }
    print_row();
    for (std::int64_t t = 0; t < steps; ++t) {
        check(linca_rule_apply(r.get(), cells.data(), n, next.data()));
        cells.swap(next);
        print_row();
    }
    return kExitOk;
}

// ---- golden checks over the three worked examples

struct Golden {
    int passed = 0;
    int total = 0;

    void report(const std::string& name, bool ok, const std::string& detail = {}) {
        ++total;
        if (ok) ++passed;
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty()) std::cout << ": " << detail;
        std::cout << '\n';
    }

    void run(const std::string& name, const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const Failure& f) {
            detail = f.message;
        }
        report(name, ok, detail);
    }
};

Rule make_rule(std::uint64_t m, std::int64_t l, std::vector<std::uint64_t> coeffs) {
    linca_rule* r = nullptr;
    check(linca_rule_create(m, l, coeffs.data(), coeffs.size(), &r));
    return Rule(r);
}

bool same_rule(const linca_rule* got, const linca_rule* want, std::string& detail) {
    if (linca_rule_equal(got, want)) return true;
    detail = "got " + render(got) + ", want " + render(want);
    return false;
}

Rule iterate(const linca_rule* r, std::int64_t n) {
    linca_rule* out = nullptr;
    check(linca_rule_iterate(r, n, &out));
    return Rule(out);
}

Rule inverse(const linca_rule* r) {
    linca_rule* out = nullptr;
    check(linca_rule_inverse(r, &out));
    return Rule(out);
}

Rule project(const linca_rule* r, std::uint64_t d) {
    linca_rule* out = nullptr;
    check(linca_rule_project(r, d, &out));
    return Rule(out);
}

bool composes_to_identity(const linca_rule* a, const linca_rule* b, std::string& detail) {
    linca_rule* out = nullptr;
    check(linca_rule_compose(a, b, &out));
    Rule c(out);
    Rule id = make_rule(linca_rule_modulus(a), 0, {1});
    return same_rule(c.get(), id.get(), detail);
}

int cmd_examples() {
    Golden g;
    Rule ex4 = make_rule(4, 1, {2, 1, 2});
    Rule ex12 = make_rule(12, 0, {6, 3, 2});
    Rule ex36 = make_rule(36, -1, {15, 10, 6});

    g.run("m=4 inverse is 2x_-3 + x_-2 + 2x_-1", [&](std::string& d) {
        Rule want = make_rule(4, -3, {2, 1, 2});
        return same_rule(inverse(ex4.get()).get(), want.get(), d);
    });
    g.run("m=4 f^2 is x_4", [&](std::string& d) {
        Rule want = make_rule(4, 4, {1});
        return same_rule(iterate(ex4.get(), 2).get(), want.get(), d);
    });
    g.run("m=4 strong mixing with j_2=2", [&](std::string& d) {
        linca_verdict v{};
        check(linca_classify(ex4.get(), &v));
        d = "kind=" + std::to_string(v.kind);
        return v.kind == LINCA_VERDICT_BERNOULLI_STRONG_MIXING && v.jp[0] == 2;
    });
    g.run("m=4 correlation equals mu(U)mu(V) past the horizon", [&](std::string& d) {
        Cyl U = cylinder("[0]@0"), V = cylinder("[0]@0");
        std::int64_t h = 0;
        check(linca_mixing_horizon(ex4.get(), U.get(), V.get(), &h));
        Measure target = product_target(ex4.get(), U.get(), V.get());
        for (std::int64_t n = h; n <= h + 8; ++n) {
            Measure mu = correlation(ex4.get(), n, U.get(), V.get());
            if (linca_measure_compare(mu.get(), target.get()) != 0) {
                d = "n=" + std::to_string(n) + " gives " + render(mu.get());
                return false;
            }
        }
        return render(target.get()) == "1/16";
    });
    g.run("m=12 projections f_4 = 2x_0+3x_1+2x_2, f_3 = 2x_2", [&](std::string& d) {
        Rule f4 = make_rule(4, 0, {2, 3, 2}), f3 = make_rule(3, 2, {2});
        return same_rule(project(ex12.get(), 4).get(), f4.get(), d) &&
               same_rule(project(ex12.get(), 3).get(), f3.get(), d);
    });
    g.run("m=12 component inverses f_4^-1 = 2x_-2+3x_-1+2x_0, f_3^-1 = 2x_-2", [&](std::string& d) {
        Rule i4 = make_rule(4, -2, {2, 3, 2}), i3 = make_rule(3, -2, {2});
        return same_rule(inverse(project(ex12.get(), 4).get()).get(), i4.get(), d) &&
               same_rule(inverse(project(ex12.get(), 3).get()).get(), i3.get(), d);
    });
    g.run("m=12 CRT inverse satisfies F*F^-1 = 1", [&](std::string& d) {
        Rule inv = inverse(ex12.get());
        Rule want = make_rule(12, -2, {2, 3, 6});
        return same_rule(inv.get(), want.get(), d) && composes_to_identity(ex12.get(), inv.get(), d);
    });
    g.run("m=12 strong mixing with j_2=1, j_3=2", [&](std::string& d) {
        linca_verdict v{};
        check(linca_classify(ex12.get(), &v));
        d = "kind=" + std::to_string(v.kind);
        return v.kind == LINCA_VERDICT_BERNOULLI_STRONG_MIXING && v.jp[0] == 1 && v.jp[1] == 2;
    });
    g.run("m=12 per-factor correlations multiply to the mod-12 value", [&](std::string& d) {
        Cyl U = cylinder("[5]@0"), V = cylinder("[7]@0");
        for (std::int64_t n = 0; n <= 6; ++n) {
            linca_measure* parts[LINCA_MAX_PRIMES] = {};
            std::size_t count = 0;
            check(linca_factor_correlation(ex12.get(), n, U.get(), V.get(), parts, LINCA_MAX_PRIMES, &count));
            std::vector<Measure> owned;
            for (std::size_t i = 0; i < count; ++i) owned.emplace_back(parts[i]);
            linca_measure* prod = nullptr;
            check(linca_measure_product(owned[0].get(), owned[1].get(), &prod));
            Measure mprod(prod);
            Measure whole = correlation(ex12.get(), n, U.get(), V.get());
            if (linca_measure_compare(mprod.get(), whole.get()) != 0) {
                d = "n=" + std::to_string(n);
                return false;
            }
        }
        return true;
    });
    g.run("m=36 f^6 = 9x_-6 + 28x_0 and f^-6 = 28x_0 + 9x_6", [&](std::string& d) {
        Rule p6 = make_rule(36, -6, {9, 0, 0, 0, 0, 0, 28});
        Rule m6 = make_rule(36, 0, {28, 0, 0, 0, 0, 0, 9});
        return same_rule(iterate(ex36.get(), 6).get(), p6.get(), d) &&
               same_rule(iterate(ex36.get(), -6).get(), m6.get(), d);
    });
    g.run("m=36 non-ergodic with j_2=-1, j_3=0", [&](std::string& d) {
        linca_verdict v{};
        check(linca_classify(ex36.get(), &v));
        d = "kind=" + std::to_string(v.kind);
        return v.kind == LINCA_VERDICT_NON_ERGODIC && v.jp[0] == -1 && v.jp[1] == 0;
    });
    g.run("m=36 mu(T^-6k [0]_0 cap [1]_0) = 0 for k=1..4", [&](std::string& d) {
        Cyl U = cylinder("[0]@0"), V = cylinder("[1]@0");
        for (std::int64_t k = 1; k <= 4; ++k) {
            Measure mu = correlation(ex36.get(), 6 * k, U.get(), V.get());
            if (render(mu.get()) != "0") {
                d = "k=" + std::to_string(k) + " gives " + render(mu.get());
                return false;
            }
        }
        return true;
    });
    std::cout << "summary=" << g.passed << '/' << g.total << '\n';
    return g.passed == g.total ? kExitOk : kExitComputation;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || item[0] == '-')
            throw Failure(LINCA_ERR_INVALID_ARGUMENT, "expected comma-separated nonnegative integers, got '" + text + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of linear cellular automata over Z_m"};
    app.require_subcommand(1);

    std::string rule_path, u_text, v_text, seed_text;
    std::int64_t n = 0, nmax = 16, ell = 1, steps = 16, width = 0, N_value = 0;
    std::uint64_t budget = 0;
    std::vector<std::int64_t> gaps;
    std::vector<std::string> cylinders;

    auto add_rule = [&](CLI::App* sub) { sub->add_option("--rule", rule_path, "rule file")->required(); };

    auto* analyze = app.add_subcommand("analyze", "classify a rule");
    add_rule(analyze);
    analyze->add_option("--U", u_text, "cylinder, e.g. [0,1]@-2 (with --V: report the mixing horizon)");
    analyze->add_option("--V", v_text, "cylinder");

    auto* invert = app.add_subcommand("invert", "synthesize the inverse rule");
    add_rule(invert);

    auto* iter = app.add_subcommand("iterate", "local rule of T_f^n");
    add_rule(iter);
    iter->add_option("--n", n, "iterate count (negative: inverse)")->required();

    auto* corr = app.add_subcommand("correlate", "TSV of mu(T^-n U cap V) for n = 0..nmax");
    add_rule(corr);
    corr->add_option("--U", u_text)->required();
    corr->add_option("--V", v_text)->required();
    corr->add_option("--nmax", nmax)->required();

    auto* kmix = app.add_subcommand("kmix", "joint measure of A_0, T^-n1 A_1, ...");
    add_rule(kmix);
    kmix->add_option("--gaps", gaps, "gaps n_1,...,n_k")->delimiter(',')->required();
    kmix->add_option("--A", cylinders, "cylinders A_0 ... A_k (repeat the flag)")->required();

    auto* bern = app.add_subcommand("bernoulli", "independence defect of the partition joins");
    add_rule(bern);
    bern->add_option("--ell", ell)->required();
    bern->add_option("--n", n)->required();
    auto* n_opt = bern->add_option("--N", N_value, "separation (default: closed-form separation time)");
    bern->add_option("--budget", budget, "cell-pair budget (default 4194304)");

    auto* space = app.add_subcommand("spacetime", "render iterates on a cyclic lattice");
    add_rule(space);
    space->add_option("--seed", seed_text, "initial cells, comma separated")->required();
    space->add_option("--steps", steps);
    space->add_option("--width", width, "lattice size (default: seed length)");

    auto* examples = app.add_subcommand("examples", "rerun the worked examples as golden checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (analyze->parsed()) {
            if (u_text.empty() != v_text.empty())
                throw Failure(LINCA_ERR_INVALID_ARGUMENT, "--U and --V must be given together");
            return cmd_analyze(rule_path, u_text, v_text);
        }
        if (invert->parsed()) return cmd_invert(rule_path);
        if (iter->parsed()) return cmd_iterate(rule_path, n);
        if (corr->parsed()) return cmd_correlate(rule_path, u_text, v_text, nmax);
        if (kmix->parsed()) {
            if (cylinders.size() != gaps.size() + 1)
                throw Failure(LINCA_ERR_INVALID_ARGUMENT, "kmix needs one more --A cylinder than gaps");
            return cmd_kmix(rule_path, gaps, cylinders);
        }
        if (bern->parsed()) {
            std::optional<std::int64_t> N;
            if (n_opt->count() > 0) N = N_value;
            return cmd_bernoulli(rule_path, ell, n, N, budget);
        }
        if (space->parsed()) return cmd_spacetime(rule_path, parse_u64_list(seed_text), steps, width);
        if (examples->parsed()) return cmd_examples();
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return (f.status == LINCA_ERR_BUDGET || f.status == LINCA_ERR_INTERNAL) ? kExitComputation : kExitValidation;
    }
    return kExitValidation;
}
