#pragma once

#include <optional>
#include <string>

#include "qhiso/classifier.hpp"
#include "qhiso/exact_classify.hpp"
#include "qhiso/normal_forms.hpp"
#include "qhiso/oracle.hpp"
#include "qhiso/zclass.hpp"

namespace qhiso {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed input document: field, model, 3x3 quaternion matrix (each entry a
/// JSON array [w,x,y,z], a number, or a string "w+xi+yj+zk"), plus optional
/// tolerance overrides.  In exact mode the entries are re-read as exact
/// rationals (decimal literals are read exactly).
struct MatrixDocument {
    Field field = Field::H;
    ModelKind model = ModelKind::Ball;
    Mat3q matrix;
    std::optional<XMat3> exact_matrix;
    Tolerances tol;
    bool has_tol_override = false;
};

MatrixDocument parse_matrix_document(const std::string& json_text, bool exact);

/// Deterministic serializer: fixed key order, %.17g floats, no locale
/// dependence, so identical inputs yield byte-identical reports.
class JsonWriter {
  public:
    std::string take() { return std::move(out_); }

    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(const std::string& k);
    void value(double v);
    void value(int v);
    void value(bool v);
    void value(const std::string& v);
    void value(const char* v) { value(std::string(v)); }
    void raw_null();

  private:
    void comma();
    std::string out_;
    std::vector<bool> first_{};
    bool pending_key_ = false;
};

std::string format_double(double v); // %.17g

/// Classification report (type, invariants, eigen classes, z-class label,
/// borderline flag, diagnostics; optional oracle and literal sections).
std::string classification_report(const Classification& c, const ZClassLabel& z,
                                  const std::optional<EigenReport>& oracle,
                                  const std::optional<LiteralVerdict>& literal,
                                  const std::optional<ExactClassifyResult>& exact);

std::string invariant_report(const Classification& c,
                             const std::optional<ExactClassifyResult>& exact);

std::string matrix_document_json(const Mat3q& m, ModelKind model, Field field,
                                 const std::string& ground_truth);

std::string zclass_list_json(const std::vector<ZClassEntry>& entries, Field field);

std::string normal_form_report(const NormalizeResult& r, Field field);

std::string membership_report(const Mat3q& m, ModelKind model, double residual, bool member);

} // namespace qhiso
