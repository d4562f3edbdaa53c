#include "hhtwist/presentation.hpp"

#include <fstream>
#include <sstream>

namespace hht {

namespace {

const Json& member(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw AlgebraError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw AlgebraError(where + (where.empty() ? "" : ".") + key + ": missing");
    return *it;
}

std::string literal(const Json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw AlgebraError(where + ": expected a scalar literal");
}

Degree degree_of(const Json& j, int rank, const std::string& where) {
    if (!j.is_array()) throw AlgebraError(where + ": expected an array");
    if (static_cast<int>(j.size()) != rank) throw AlgebraError(where + ": expected " + std::to_string(rank) + " entries");
    Degree d;
    for (auto& v : j) {
        if (!v.is_number_integer()) throw AlgebraError(where + ": expected integers");
        d.push_back(v.get<int>());
    }
    return d;
}

}  // namespace

FieldSpec field_spec_from_json(const Json& j) {
    const std::string kind = member(j, "kind", "field").get<std::string>();
    FieldSpec s;
    if (kind == "Q")
        s.kind = FieldKind::rationals;
    else if (kind == "Fp")
        s.kind = FieldKind::prime;
    else if (kind == "Qq")
        s.kind = FieldKind::rational_function;
    else if (kind == "cyclotomic")
        s.kind = FieldKind::cyclotomic;
    else
        throw AlgebraError("field.kind: unknown kind '" + kind + "'");
    if (j.contains("p")) s.p = j["p"].get<std::int64_t>();
    if (j.contains("r")) s.r = j["r"].get<int>();
    if (j.contains("q")) s.q = literal(j["q"], "field.q");
    return s;
}

Json field_spec_to_json(const FieldSpec& s) {
    Json j;
    switch (s.kind) {
    case FieldKind::rationals: j["kind"] = "Q"; break;
    case FieldKind::prime: j["kind"] = "Fp"; break;
    case FieldKind::rational_function: j["kind"] = "Qq"; break;
    case FieldKind::cyclotomic: j["kind"] = "cyclotomic"; break;
    }
    if (s.p != 0) j["p"] = s.p;
    if (s.r != 0) j["r"] = s.r;
    if (s.q) j["q"] = *s.q;
    return j;
}

AlgebraPtr algebra_from_json(const Json& j) {
    if (!j.is_object()) throw AlgebraError("presentation: expected an object");
    const std::string name = j.value("name", "A");
    FieldPtr field;
    try {
        field = Field::make(field_spec_from_json(member(j, "field", "")));
    } catch (const AlgebraError&) {
        throw;
    } catch (const std::exception& e) {
        throw AlgebraError(std::string("field: ") + e.what());
    }
    const Json& rj = member(j, "grading_rank", "");
    if (!rj.is_number_integer() || rj.get<int>() < 1) throw AlgebraError("grading_rank: expected a positive integer");
    const int rank = rj.get<int>();

    const Json& bj = member(j, "basis", "");
    if (!bj.is_array()) throw AlgebraError("basis: expected an array");
    std::vector<BasisElement> basis;
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < bj.size(); ++i) {
        const std::string where = "basis[" + std::to_string(i) + "]";
        const Json& lj = member(bj[i], "label", where);
        if (!lj.is_string()) throw AlgebraError(where + ".label: expected a string");
        basis.push_back({lj.get<std::string>(), degree_of(member(bj[i], "degree", where), rank, where + ".degree")});
        index.emplace(basis.back().label, static_cast<int>(i));
    }
    auto lookup = [&](const Json& v, const std::string& where) {
        if (!v.is_string()) throw AlgebraError(where + ": expected a basis label");
        auto it = index.find(v.get<std::string>());
        if (it == index.end()) throw AlgebraError(where + ": unknown basis label '" + v.get<std::string>() + "'");
        return it->second;
    };

    const Json& uj = member(j, "unit", "");
    if (!uj.is_string() || !index.count(uj.get<std::string>())) throw AlgebraError("unit not in basis");
    const int unit = index.at(uj.get<std::string>());

    std::map<std::pair<int, int>, AlgElem> products;
    if (j.contains("products")) {
        const Json& pj = j["products"];
        if (!pj.is_array()) throw AlgebraError("products: expected an array");
        for (std::size_t i = 0; i < pj.size(); ++i) {
            const std::string where = "products[" + std::to_string(i) + "]";
            int l = lookup(member(pj[i], "left", where), where + ".left");
            int r = lookup(member(pj[i], "right", where), where + ".right");
            const Json& tj = member(pj[i], "terms", where);
            if (!tj.is_array()) throw AlgebraError(where + ".terms: expected an array");
            AlgElem v;
            for (std::size_t t = 0; t < tj.size(); ++t) {
                const std::string tw = where + ".terms[" + std::to_string(t) + "]";
                Scalar c;
                try {
                    c = field->parse(literal(member(tj[t], "coeff", tw), tw + ".coeff"));
                } catch (const AlgebraError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw AlgebraError(tw + ".coeff: " + e.what());
                }
                v += AlgElem(lookup(member(tj[t], "basis", tw), tw + ".basis"), c);
            }
            if (!products.emplace(std::pair{l, r}, v).second) throw AlgebraError(where + ": duplicate product entry");
        }
    }
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
        products.try_emplace({unit, i}, AlgElem(i, field->one()));
        products.try_emplace({i, unit}, AlgElem(i, field->one()));
    }
    return std::make_shared<GradedAlgebra>(field, name, rank, std::move(basis), unit, products);
}

Json algebra_to_json(const GradedAlgebra& a) {
    Json j;
    j["name"] = a.name();
    j["field"] = field_spec_to_json(a.field()->spec());
    j["grading_rank"] = a.grading_rank();
    j["basis"] = Json::array();
    for (int i = 0; i < a.dim(); ++i) j["basis"].push_back({{"label", a.label(i)}, {"degree", a.degree(i)}});
    j["unit"] = a.label(a.unit());
    j["products"] = Json::array();
    for (int l = 0; l < a.dim(); ++l)
        for (int r = 0; r < a.dim(); ++r) {
            if (l == a.unit() || r == a.unit()) continue;
            const AlgElem& p = a.product(l, r);
            if (p.empty()) continue;
            Json terms = Json::array();
            for (auto& [b, c] : p) terms.push_back({{"coeff", c.str()}, {"basis", a.label(b)}});
            j["products"].push_back({{"left", a.label(l)}, {"right", a.label(r)}, {"terms", terms}});
        }
    return j;
}

AlgebraPtr load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw AlgebraError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw AlgebraError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
    }
    return algebra_from_json(j);
}

std::vector<std::string> builtin_names() {
    return {"dual_numbers", "truncated_x3", "lambda_q_generic", "lambda_q_minus_one", "lambda_q_one"};
}

AlgebraPtr builtin_algebra(const std::string& name) {
    if (name == "dual_numbers") return truncated_poly(Field::rationals(), "x", 2);
    if (name == "truncated_x3") return truncated_poly(Field::rationals(), "x", 3);
    if (name == "lambda_q_generic") {
        auto f = Field::rational_functions();
        return quantum_complete_intersection(f, f->q());
    }
    if (name == "lambda_q_minus_one") {
        auto f = Field::rationals();
        return quantum_complete_intersection(f, f->from_int(-1));
    }
    if (name == "lambda_q_one") {
        auto f = Field::rationals();
        return quantum_complete_intersection(f, f->one());
    }
    throw AlgebraError("unknown builtin algebra '" + name + "'");
}

std::optional<Scalar> recognize_qci(const GradedAlgebra& a) {
    if (a.dim() != 4 || a.grading_rank() != 2) return std::nullopt;
    auto x = a.find("x"), y = a.find("y"), xy = a.find("xy");
    if (!x || !y || !xy) return std::nullopt;
    const AlgElem& yx = a.product(*y, *x);
    if (yx.size() != 1 || yx.begin()->first != *xy) return std::nullopt;
    const Scalar q = -yx.begin()->second.inverse();
    auto model = quantum_complete_intersection(a.field(), q);
    auto relabel = [&](const GradedAlgebra& from, int i) { return *a.find(from.label(i)); };
    for (int i = 0; i < 4; ++i) {
        auto ai = a.find(model->label(i));
        if (!ai || a.degree(*ai) != model->degree(i)) return std::nullopt;
    }
    if (relabel(*model, model->unit()) != a.unit()) return std::nullopt;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            AlgElem mapped;
            for (auto& [b, c] : model->product(i, j)) mapped += AlgElem(relabel(*model, b), c);
            if (!(mapped == a.product(relabel(*model, i), relabel(*model, j)))) return std::nullopt;
        }
    return q;
}

}  // namespace hht
