#include "qhiso/io.hpp"

#include <json.hpp>

#include <cstdio>

namespace qhiso {

using nlohmann::json;

namespace {

Quaternion quaternion_from_json(const json& j) {
    if (j.is_number()) return Quaternion::scalar(j.get<double>());
    if (j.is_string()) return parse_quaternion(j.get<std::string>());
    if (j.is_array()) {
        if (j.size() != 4) throw parse_error("quaternion array must have 4 components");
        return Quaternion(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                          j[3].get<double>());
    }
    throw parse_error("quaternion entry must be a number, string, or [w,x,y,z] array");
}

std::string exact_component(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number()) { // read the decimal literal exactly
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
        return buf;
    }
    throw parse_error("exact component must be a number or string");
}

XQuat exact_quaternion_from_json(const json& j) {
    if (j.is_array()) {
        if (j.size() != 4) throw parse_error("quaternion array must have 4 components");
        return XQuat(parse_exact_real(exact_component(j[0])), parse_exact_real(exact_component(j[1])),
                     parse_exact_real(exact_component(j[2])), parse_exact_real(exact_component(j[3])));
    }
    if (j.is_string()) return parse_exact_quaternion(j.get<std::string>());
    if (j.is_number()) return XQuat(parse_exact_real(exact_component(j)), ExactReal(0), ExactReal(0),
                                    ExactReal(0));
    throw parse_error("exact quaternion entry must be a number, string, or array");
}

} // namespace

MatrixDocument parse_matrix_document(const std::string& json_text, bool exact) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    MatrixDocument doc;
    try {
        if (j.contains("field")) {
            std::string f = j["field"].get<std::string>();
            if (f == "H" || f == "h")
                doc.field = Field::H;
            else if (f == "C" || f == "c")
                doc.field = Field::C;
            else
                throw parse_error("field must be \"H\" or \"C\"");
        }
        if (j.contains("model")) {
            std::string m = j["model"].get<std::string>();
            if (m == "ball")
                doc.model = ModelKind::Ball;
            else if (m == "siegel")
                doc.model = ModelKind::Siegel;
            else
                throw parse_error("model must be \"ball\" or \"siegel\"");
        }
        if (!j.contains("matrix")) throw parse_error("document lacks \"matrix\"");
        const json& m = j["matrix"];
        if (!m.is_array() || m.size() != 3) throw parse_error("matrix must be a 3x3 array");
        for (int i = 0; i < 3; ++i) {
            const json& row = m[static_cast<size_t>(i)];
            if (!row.is_array() || row.size() != 3) throw parse_error("matrix must be a 3x3 array");
            for (int k = 0; k < 3; ++k)
                doc.matrix.at(i, k) = quaternion_from_json(row[static_cast<size_t>(k)]);
        }
        if (exact) {
            XMat3 xm;
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k)
                    xm.at(i, k) = exact_quaternion_from_json(
                        m[static_cast<size_t>(i)][static_cast<size_t>(k)]);
            doc.exact_matrix = xm;
        }
        if (j.contains("tolerance")) {
            const json& t = j["tolerance"];
            doc.has_tol_override = true;
            if (t.is_number()) {
                doc.tol.rel = t.get<double>();
                doc.tol.membership = doc.tol.rel;
            } else {
                if (t.contains("rel")) doc.tol.rel = t["rel"].get<double>();
                if (t.contains("membership")) doc.tol.membership = t["membership"].get<double>();
                if (t.contains("root_cluster")) doc.tol.root_cluster = t["root_cluster"].get<double>();
                if (t.contains("rank_rel")) doc.tol.rank_rel = t["rank_rel"].get<double>();
                if (t.contains("angle_real")) doc.tol.angle_real = t["angle_real"].get<double>();
            }
        }
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(std::string("malformed document: ") + e.what());
    }
    if (doc.field == Field::C) {
        for (const auto& q : doc.matrix.e)
            if (std::fabs(q.y) > 1e-15 || std::fabs(q.z) > 1e-15)
                throw parse_error("field \"C\" requires all j and k parts to vanish");
    }
    return doc;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void JsonWriter::comma() {
    if (!first_.empty()) {
        if (!first_.back() && !pending_key_) out_ += ",";
        first_.back() = false;
    }
    pending_key_ = false;
}

void JsonWriter::begin_object() {
    comma();
    out_ += "{";
    first_.push_back(true);
}
void JsonWriter::end_object() {
    out_ += "}";
    first_.pop_back();
}
void JsonWriter::begin_array() {
    comma();
    out_ += "[";
    first_.push_back(true);
}
void JsonWriter::end_array() {
    out_ += "]";
    first_.pop_back();
}
void JsonWriter::key(const std::string& k) {
    comma();
    out_ += "\"" + k + "\":";
    pending_key_ = true;
}
void JsonWriter::value(double v) {
    comma();
    out_ += format_double(v);
}
void JsonWriter::value(int v) {
    comma();
    out_ += std::to_string(v);
}
void JsonWriter::value(bool v) {
    comma();
    out_ += v ? "true" : "false";
}
void JsonWriter::value(const std::string& v) {
    comma();
    std::string escaped;
    for (char c : v) {
        switch (c) {
            case '"': escaped += "\\\""; break;
            case '\\': escaped += "\\\\"; break;
            case '\n': escaped += "\\n"; break;
            default: escaped += c;
        }
    }
    out_ += "\"" + escaped + "\"";
}
void JsonWriter::raw_null() {
    comma();
    out_ += "null";
}

namespace {

void write_quaternion(JsonWriter& w, const Quaternion& q) {
    w.begin_array();
    w.value(q.w);
    w.value(q.x);
    w.value(q.y);
    w.value(q.z);
    w.end_array();
}

void write_matrix(JsonWriter& w, const Mat3q& m) {
    w.begin_array();
    for (int i = 0; i < 3; ++i) {
        w.begin_array();
        for (int j = 0; j < 3; ++j) write_quaternion(w, m.at(i, j));
        w.end_array();
    }
    w.end_array();
}

void write_invariants(JsonWriter& w, const InvariantRecord& inv,
                      const std::optional<ExactClassifyResult>& exact) {
    w.begin_object();
    w.key("a");
    w.value(inv.a);
    w.key("b");
    w.value(inv.b);
    w.key("c");
    w.value(inv.c);
    w.key("G");
    w.value(inv.G);
    w.key("H");
    w.value(inv.H);
    w.key("Delta");
    w.value(inv.Delta);
    w.key("min_degree");
    w.value(inv.min_degree);
    w.key("factor_structure");
    w.begin_array();
    for (const auto& f : inv.factor_structure) {
        w.begin_object();
        w.key("factor");
        w.value(f.text);
        w.key("chi_multiplicity");
        w.value(f.chi_multiplicity);
        w.key("exponent");
        w.value(f.exponent);
        w.end_object();
    }
    w.end_array();
    w.key("self_dual_residual");
    w.value(inv.self_dual_residual);
    w.key("membership_residual");
    w.value(inv.membership_residual);
    if (exact) {
        w.key("exact");
        w.begin_object();
        w.key("a");
        w.value(exact->inv.a.str());
        w.key("b");
        w.value(exact->inv.b.str());
        w.key("c");
        w.value(exact->inv.c.str());
        w.key("G");
        w.value(exact->inv.G.str());
        w.key("H");
        w.value(exact->inv.H.str());
        w.key("Delta");
        w.value(exact->inv.Delta.str());
        w.end_object();
    }
    w.key("tolerances");
    w.begin_object();
    w.key("rel");
    w.value(inv.tol_used.rel);
    w.key("membership");
    w.value(inv.tol_used.membership);
    w.key("root_cluster");
    w.value(inv.tol_used.root_cluster);
    w.key("rank_rel");
    w.value(inv.tol_used.rank_rel);
    w.key("angle_real");
    w.value(inv.tol_used.angle_real);
    w.end_object();
    w.end_object();
}

void write_eigen_classes(JsonWriter& w, const std::vector<EigenClassInfo>& classes) {
    w.begin_array();
    for (const auto& c : classes) {
        w.begin_object();
        w.key("modulus");
        w.value(c.modulus);
        w.key("angle");
        w.value(c.angle);
        w.key("multiplicity");
        w.value(c.multiplicity);
        w.key("unit_modulus");
        w.value(c.unit_modulus);
        w.key("real_angle");
        w.value(c.real_angle);
        w.key("hosts_negative");
        w.value(c.hosts_negative);
        w.end_object();
    }
    w.end_array();
}

void write_zlabel(JsonWriter& w, const ZClassLabel& z) {
    w.begin_object();
    w.key("family");
    w.value(zfamily_name(z.family));
    w.key("case_id");
    w.value(z.case_id);
    w.key("centralizer");
    w.value(z.centralizer);
    w.end_object();
}

} // namespace

std::string classification_report(const Classification& c, const ZClassLabel& z,
                                  const std::optional<EigenReport>& oracle,
                                  const std::optional<LiteralVerdict>& literal,
                                  const std::optional<ExactClassifyResult>& exact) {
    JsonWriter w;
    w.begin_object();
    w.key("type");
    std::string tname = type_name(c.dtype);
    if (c.is_identity) tname += " (identity)";
    w.value(tname);
    w.key("field");
    w.value(field_name(c.field));
    w.key("model");
    w.value(model_name(c.model));
    w.key("invariants");
    write_invariants(w, c.inv, exact);
    w.key("eigen_classes");
    write_eigen_classes(w, c.eigen_classes);
    w.key("zclass");
    write_zlabel(w, z);
    w.key("borderline");
    w.value(c.borderline);
    w.key("diagnostics");
    w.value(c.diagnostics);
    if (oracle) {
        w.key("oracle");
        w.begin_object();
        w.key("type");
        w.value(type_name(oracle->dtype));
        w.key("agrees");
        w.value(oracle->dtype == c.dtype);
        w.key("off_circle_classes");
        w.value(oracle->off_circle);
        w.key("jordan_defect");
        w.value(oracle->jordan_defect);
        w.key("classes");
        write_eigen_classes(w, oracle->classes);
        w.end_object();
    }
    if (literal) {
        w.key("literal_decision_text");
        w.begin_object();
        w.key("covered");
        w.value(literal->covered);
        w.key("type");
        if (literal->dtype)
            w.value(type_name(*literal->dtype));
        else
            w.raw_null();
        w.key("hyperbolic_bounds_hold");
        w.value(literal->item2_bounds_hold);
        w.key("elliptic_parabolic_bounds_hold");
        w.value(literal->item3_bounds_hold);
        w.key("agrees");
        w.value(literal->dtype && *literal->dtype == c.dtype);
        w.end_object();
    }
    w.end_object();
    return w.take();
}

std::string invariant_report(const Classification& c,
                             const std::optional<ExactClassifyResult>& exact) {
    JsonWriter w;
    w.begin_object();
    w.key("invariants");
    write_invariants(w, c.inv, exact);
    w.key("eigen_classes");
    write_eigen_classes(w, c.eigen_classes);
    w.end_object();
    return w.take();
}

std::string matrix_document_json(const Mat3q& m, ModelKind model, Field field,
                                 const std::string& ground_truth) {
    JsonWriter w;
    w.begin_object();
    w.key("field");
    w.value(field_name(field));
    w.key("model");
    w.value(model_name(model));
    w.key("matrix");
    write_matrix(w, m);
    if (!ground_truth.empty()) {
        w.key("ground_truth");
        w.value(ground_truth);
    }
    w.end_object();
    return w.take();
}

std::string zclass_list_json(const std::vector<ZClassEntry>& entries, Field field) {
    JsonWriter w;
    w.begin_object();
    w.key("field");
    w.value(field_name(field));
    w.key("count");
    w.value(static_cast<int>(entries.size()));
    w.key("zclasses");
    w.begin_array();
    for (const auto& e : entries) {
        w.begin_object();
        w.key("label");
        write_zlabel(w, e.label);
        w.key("representative_params");
        w.value(e.description);
        w.key("model");
        w.value(model_name(e.model));
        w.key("representative");
        write_matrix(w, e.representative);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.take();
}

std::string normal_form_report(const NormalizeResult& r, Field field) {
    JsonWriter w;
    w.begin_object();
    w.key("kind");
    switch (r.form.kind) {
        case NormalForm::Kind::Hyperbolic: w.value("hyperbolic"); break;
        case NormalForm::Kind::Elliptic: w.value("elliptic"); break;
        case NormalForm::Kind::Parabolic: w.value("parabolic"); break;
    }
    w.key("field");
    w.value(field_name(field));
    w.key("model");
    w.value(model_name(r.form.model));
    w.key("parameters");
    w.begin_object();
    switch (r.form.kind) {
        case NormalForm::Kind::Hyperbolic:
            w.key("r");
            w.value(r.form.r);
            w.key("beta");
            w.value(r.form.beta);
            w.key("theta");
            w.value(r.form.theta);
            break;
        case NormalForm::Kind::Elliptic:
            w.key("theta");
            w.value(r.form.theta);
            w.key("phi");
            w.value(r.form.phi);
            w.key("psi");
            w.value(r.form.psi);
            break;
        case NormalForm::Kind::Parabolic:
            w.key("theta");
            w.value(r.form.theta);
            w.key("phi");
            w.value(r.form.phi);
            w.key("d");
            w.begin_array();
            w.value(r.form.d.real());
            w.value(r.form.d.imag());
            w.end_array();
            w.key("f");
            w.begin_array();
            w.value(r.form.f.real());
            w.value(r.form.f.imag());
            w.end_array();
            w.key("g");
            w.begin_array();
            w.value(r.form.g.real());
            w.value(r.form.g.imag());
            w.end_array();
            break;
    }
    w.end_object();
    w.key("normal_form");
    write_matrix(w, r.form.matrix);
    w.key("conjugator");
    write_matrix(w, r.conjugator);
    w.key("residual");
    w.value(r.residual);
    w.end_object();
    return w.take();
}

std::string membership_report(const Mat3q& m, ModelKind model, double residual, bool member) {
    JsonWriter w;
    w.begin_object();
    w.key("model");
    w.value(model_name(model));
    w.key("residual");
    w.value(residual);
    w.key("member");
    w.value(member);
    (void)m;
    w.end_object();
    return w.take();
}

} // namespace qhiso
