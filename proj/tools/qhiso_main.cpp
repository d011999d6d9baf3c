#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qhiso/io.hpp"

using namespace qhiso;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitMembership = 3;
constexpr int kExitBorderline = 4;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct GlobalOpts {
    std::string input;
    double tol = 0.0;
    bool exact = false;
    bool oracle = false;
    bool literal = false;
    bool allow_borderline = false;
    std::string model_override;
    std::string field_override;
};

MatrixDocument load_document(const GlobalOpts& g) {
    MatrixDocument doc = parse_matrix_document(read_input(g.input), g.exact);
    if (!g.model_override.empty())
        doc.model = g.model_override == "siegel" ? ModelKind::Siegel : ModelKind::Ball;
    if (!g.field_override.empty()) doc.field = g.field_override == "C" ? Field::C : Field::H;
    if (g.tol > 0.0) {
        doc.tol.rel = g.tol;
        doc.tol.membership = g.tol;
    }
    return doc;
}

int run_classify(const GlobalOpts& g, bool invariants_only) {
    MatrixDocument doc = load_document(g);
    std::optional<ExactClassifyResult> exact;
    Classification cls;
    if (g.exact && doc.exact_matrix) {
        exact = classify_exact(*doc.exact_matrix, doc.model, doc.field);
        cls = exact->presentation;
    } else {
        cls = classify(doc.matrix, doc.model, doc.field, doc.tol);
    }
    if (cls.borderline && !g.allow_borderline) {
        std::cerr << "borderline classification (" << cls.diagnostics
                  << "); rerun with --allow-borderline to accept\n";
        return kExitBorderline;
    }
    if (invariants_only) {
        std::cout << invariant_report(cls, exact) << "\n";
        return 0;
    }
    ZClassLabel z = zclass_label(cls, doc.field);
    std::optional<EigenReport> orep;
    if (g.oracle) orep = eigen_report(doc.matrix, doc.model, doc.field, doc.tol);
    std::optional<LiteralVerdict> lit;
    if (g.literal) lit = classify_literal_theorem(cls.inv);
    std::cout << classification_report(cls, z, orep, lit, exact) << "\n";
    return 0;
}

int run_zclass(const GlobalOpts& g) {
    MatrixDocument doc = load_document(g);
    Classification cls;
    if (g.exact && doc.exact_matrix)
        cls = classify_exact(*doc.exact_matrix, doc.model, doc.field).presentation;
    else
        cls = classify(doc.matrix, doc.model, doc.field, doc.tol);
    if (cls.borderline && !g.allow_borderline) {
        std::cerr << "borderline classification; rerun with --allow-borderline\n";
        return kExitBorderline;
    }
    ZClassLabel z = zclass_label(cls, doc.field);
    JsonWriter w;
    w.begin_object();
    w.key("family");
    w.value(zfamily_name(z.family));
    w.key("case_id");
    w.value(z.case_id);
    w.key("centralizer");
    w.value(z.centralizer);
    w.end_object();
    std::cout << w.take() << "\n";
    return 0;
}

int run_normal_form(const GlobalOpts& g) {
    MatrixDocument doc = load_document(g);
    if (g.exact) {
        std::cerr << "--exact is not supported for normal-form (numerical reduction)\n";
        return kExitParse;
    }
    NormalizeResult r = normalize(doc.matrix, doc.model, doc.field, doc.tol);
    std::cout << normal_form_report(r, doc.field) << "\n";
    return 0;
}

int run_check_membership(const GlobalOpts& g) {
    MatrixDocument doc = load_document(g);
    if (g.exact && doc.exact_matrix) {
        ExactReal res = membership_residual_exact(*doc.exact_matrix, doc.model);
        JsonWriter w;
        w.begin_object();
        w.key("model");
        w.value(model_name(doc.model));
        w.key("residual_exact");
        w.value(res.str());
        w.key("member");
        w.value(res.is_zero());
        w.end_object();
        std::cout << w.take() << "\n";
        return res.is_zero() ? 0 : kExitMembership;
    }
    double res = membership_residual(doc.matrix, doc.model);
    double scale = 1.0 + max_abs_entry(doc.matrix) * max_abs_entry(doc.matrix);
    bool member = res <= doc.tol.membership * scale;
    std::cout << membership_report(doc.matrix, doc.model, res, member) << "\n";
    return member ? 0 : kExitMembership;
}

int run_sample(const std::string& type_name_arg, const std::string& field_arg, int count,
               uint64_t seed) {
    auto t = type_from_name(type_name_arg);
    if (!t) {
        std::cerr << "unknown type name: " << type_name_arg << "\n";
        return kExitParse;
    }
    Field field = field_arg == "C" ? Field::C : Field::H;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        Sample s = sample(*t, field, rng);
        std::cout << matrix_document_json(s.matrix, s.model, field, type_name(s.ground_truth))
                  << "\n";
    }
    return 0;
}

int run_zclasses(const std::string& field_arg) {
    Field field = field_arg == "C" ? Field::C : Field::H;
    std::cout << zclass_list_json(enumerate_zclasses(field), field) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"classification of isometries of the complex and quaternionic hyperbolic plane"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--input,-i", g.input, "input JSON document (default: stdin)");
    app.add_option("--tol", g.tol, "relative tolerance override");
    app.add_flag("--exact", g.exact, "exact rational arithmetic (classify/invariants/zclass/check-membership)");
    app.add_flag("--oracle", g.oracle, "attach the eigenvalue-oracle verdict");
    app.add_flag("--literal", g.literal, "attach the verdict of the literal decision text");
    app.add_flag("--allow-borderline", g.allow_borderline, "accept borderline classifications");
    app.add_option("--model", g.model_override, "override model: ball|siegel")
        ->check(CLI::IsMember({"ball", "siegel"}));
    app.add_option("--field", g.field_override, "override field: H|C")
        ->check(CLI::IsMember({"H", "C"}));

    auto* c_classify = app.add_subcommand("classify", "dynamical type + z-class of a member");
    auto* c_invariants = app.add_subcommand("invariants", "invariant record only");
    auto* c_nf = app.add_subcommand("normal-form", "conjugacy normal form with conjugator");
    auto* c_zclass = app.add_subcommand("zclass", "z-class label of a member");
    auto* c_zclasses = app.add_subcommand("zclasses", "enumerate all z-classes");
    auto* c_sample = app.add_subcommand("sample", "sample matrices of a given dynamical type");
    auto* c_check = app.add_subcommand("check-membership", "form-preservation residual");

    std::string sample_type, sample_field = "H", zc_field = "H";
    int sample_count = 1;
    uint64_t sample_seed = 0;
    c_sample->add_option("type", sample_type, "dynamical type (kebab-case)")->required();
    c_sample->add_option("--field", sample_field, "H|C")->check(CLI::IsMember({"H", "C"}));
    c_sample->add_option("--count,-n", sample_count, "number of samples");
    c_sample->add_option("--seed", sample_seed, "RNG seed (deterministic output)");
    c_zclasses->add_option("--field", zc_field, "H|C")->check(CLI::IsMember({"H", "C"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_classify->parsed()) return run_classify(g, false);
        if (c_invariants->parsed()) return run_classify(g, true);
        if (c_nf->parsed()) return run_normal_form(g);
        if (c_zclass->parsed()) return run_zclass(g);
        if (c_zclasses->parsed()) return run_zclasses(zc_field);
        if (c_sample->parsed()) return run_sample(sample_type, sample_field, sample_count, sample_seed);
        if (c_check->parsed()) return run_check_membership(g);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const membership_error& e) {
        std::cerr << "membership error: " << e.what() << "\n";
        return kExitMembership;
    } catch (const parameter_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
