#include "partrank/json_io.hpp"

#include <fstream>

namespace partrank {

Json field_to_json(const Field& f) {
    if (f.is_rational()) return Json("rational");
    return Json{{"char", f.characteristic()}};
}

Field field_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "rational") return Field::rational();
        throw ParseError("unknown field '" + j.get<std::string>() + "'");
    }
    if (j.is_object() && j.contains("char")) return Field::gf(j["char"].get<unsigned>());
    throw ParseError("bad field descriptor");
}

Json tensor_to_json(const Tensor& t) {
    Json j;
    j["order"] = t.order();
    j["dims"] = t.dims();
    j["field"] = field_to_json(t.field());
    Json entries = Json::array();
    for (std::size_t f = 0; f < t.size(); ++f) {
        if (t[f].is_zero()) continue;
        std::vector<std::size_t> idx = t.unflatten_index(f);
        for (std::size_t& i : idx) ++i;
        entries.push_back(Json{{"idx", idx}, {"val", t[f].str()}});
    }
    j["entries"] = std::move(entries);
    return j;
}

Tensor tensor_from_json(const Json& j) {
    try {
        const Field field = field_from_json(j.at("field"));
        std::vector<std::size_t> dims = j.at("dims").get<std::vector<std::size_t>>();
        if (j.contains("order") && j.at("order").get<std::size_t>() != dims.size())
            throw ParseError("tensor order does not match dims");
        Tensor t(dims, field);
        for (const Json& e : j.at("entries")) {
            std::vector<std::size_t> idx = e.at("idx").get<std::vector<std::size_t>>();
            for (std::size_t& i : idx) {
                if (i == 0) throw ParseError("tensor indices are 1-based");
                --i;
            }
            t.at(idx) = Scalar::parse(field, e.at("val").get<std::string>());
        }
        return t;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("bad tensor JSON: ") + ex.what());
    }
}

Json decomposition_to_json(const PartitionDecomposition& dec) {
    Json terms = Json::array();
    for (const PartitionTerm& t : dec.terms) {
        std::vector<std::size_t> axes = t.split.axes;
        for (std::size_t& a : axes) ++a;
        terms.push_back(
            Json{{"I", axes}, {"A", tensor_to_json(t.a)}, {"B", tensor_to_json(t.b)}});
    }
    return Json{{"terms", std::move(terms)}};
}

PartitionDecomposition decomposition_from_json(const Json& j) {
    try {
        std::vector<PartitionTerm> terms;
        std::vector<std::size_t> dims;
        std::optional<Field> field;
        for (const Json& tj : j.at("terms")) {
            std::vector<std::size_t> axes = tj.at("I").get<std::vector<std::size_t>>();
            for (std::size_t& a : axes) {
                if (a == 0) throw ParseError("split axes are 1-based");
                --a;
            }
            Tensor a = tensor_from_json(tj.at("A"));
            Tensor b = tensor_from_json(tj.at("B"));
            const std::size_t order = a.order() + b.order();
            if (axes.size() != a.order()) throw ParseError("split size does not match A");
            AxisSplit split{axes};
            if (axes.empty() || axes.front() != 0)
                throw ParseError("split representative must contain axis 1");
            // reconstruct full dims
            std::vector<std::size_t> full(order, 0);
            const std::vector<std::size_t> comp = split.complement(order);
            for (std::size_t i = 0; i < axes.size(); ++i) full[axes[i]] = a.dim(i);
            for (std::size_t i = 0; i < comp.size(); ++i) full[comp[i]] = b.dim(i);
            if (dims.empty())
                dims = full;
            else if (dims != full)
                throw ParseError("inconsistent term dimensions");
            if (!field)
                field = a.field();
            else if (!(*field == a.field()))
                throw ParseError("inconsistent term fields");
            terms.push_back(PartitionTerm{std::move(split), std::move(a), std::move(b)});
        }
        if (dims.empty()) throw ParseError("cannot reconstruct dims of an empty decomposition");
        return PartitionDecomposition{dims, *field, std::move(terms)};
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("bad decomposition JSON: ") + ex.what());
    }
}

Json poly_to_json(const Poly& p) {
    Json j;
    j["vars"] = p.universe() == VarUniverse::tensor_entries ? "tensor" : "point";
    if (p.universe() == VarUniverse::tensor_entries)
        j["dims"] = p.axis_sizes();
    else
        j["n"] = p.num_points();
    j["field"] = field_to_json(p.field());
    j["degree"] = p.degree();
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json exp = Json::array();
        for (std::size_t v = 0; v < p.var_count(); ++v) {
            if (!e[v]) continue;
            if (p.universe() == VarUniverse::tensor_entries) {
                std::vector<std::size_t> tup = p.var_tuple(v);
                for (std::size_t& i : tup) ++i;
                exp.push_back(Json::array({tup, e[v]}));
            } else {
                exp.push_back(Json::array({v + 1, e[v]}));
            }
        }
        terms.push_back(Json{{"exp", std::move(exp)}, {"coef", c.str()}});
    }
    j["terms"] = std::move(terms);
    return j;
}

Poly poly_from_json(const Json& j) {
    try {
        const std::string vars = j.at("vars").get<std::string>();
        const Field field = j.contains("field") ? field_from_json(j.at("field"))
                                                : Field::rational();
        Poly p = vars == "tensor"
                     ? Poly::tensor_vars(j.at("dims").get<std::vector<std::size_t>>(), field)
                     : Poly::point_vars(j.at("n").get<std::size_t>(), field);
        for (const Json& tj : j.at("terms")) {
            Exponents e(p.var_count(), 0);
            for (const Json& vj : tj.at("exp")) {
                std::size_t var;
                unsigned power = vj.at(1).get<unsigned>();
                if (vars == "tensor") {
                    std::vector<std::size_t> tup = vj.at(0).get<std::vector<std::size_t>>();
                    for (std::size_t& i : tup) {
                        if (i == 0) throw ParseError("variable indices are 1-based");
                        --i;
                    }
                    var = p.var_id(tup);
                } else {
                    var = vj.at(0).get<std::size_t>() - 1;
                }
                e.at(var) = static_cast<std::uint8_t>(e.at(var) + power);
            }
            p.add_term(e, Scalar::parse(field, tj.at("coef").get<std::string>()));
        }
        return p;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("bad polynomial JSON: ") + ex.what());
    }
}

Json certificate_to_json(const RankCertificate& cert, const Tensor& queried) {
    Json j;
    j["value"] = cert.value;
    j["lower_bound"] =
        cert.tag == LowerBoundTag::exhaustive_search ? "exhaustive-search" : "none";
    j["tensor_hash"] = tensor_hash(queried);
    j["witness"] = decomposition_to_json(cert.witness);
    return j;
}

Json triple_to_json(const SubspaceTriple& t) {
    Json bases = Json::array();
    for (const ExactMatrix& m : t.bases) {
        Json vecs = Json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            Json v = Json::array();
            for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m.at(r, c).str());
            vecs.push_back(std::move(v));
        }
        bases.push_back(std::move(vecs));
    }
    return Json{{"n", t.n}, {"field", "rational"}, {"bases", std::move(bases)}};
}

SubspaceTriple triple_from_json(const Json& j) {
    try {
        const std::size_t n = j.at("n").get<std::size_t>();
        const Field field =
            j.contains("field") ? field_from_json(j.at("field")) : Field::rational();
        const Json& bases = j.at("bases");
        if (!bases.is_array() || bases.size() != 3) throw ParseError("need three bases");
        std::array<ExactMatrix, 3> ms{ExactMatrix(0, n, field), ExactMatrix(0, n, field),
                                      ExactMatrix(0, n, field)};
        for (std::size_t i = 0; i < 3; ++i) {
            const Json& vecs = bases[i];
            ms[i] = ExactMatrix(vecs.size(), n, field);
            for (std::size_t r = 0; r < vecs.size(); ++r)
                for (std::size_t c = 0; c < n; ++c)
                    ms[i].at(r, c) = Scalar::parse(field, vecs[r][c].get<std::string>());
        }
        return SubspaceTriple{n, std::move(ms)};
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("bad subspace-triple JSON: ") + ex.what());
    }
}

Json hchain_to_json(const HChain& c) {
    Json j;
    j["m"] = c.m;
    Json hs = Json::array(), rs = Json::array(), ps = Json::array();
    for (const Poly& h : c.h) hs.push_back(poly_to_json(h));
    for (const Poly& r : c.r) rs.push_back(poly_to_json(r));
    for (const auto& level : c.perms) {
        Json axes = Json::array();
        for (const auto& perm : level) {
            std::vector<std::size_t> p = perm;
            for (std::size_t& v : p) ++v;
            axes.push_back(p);
        }
        ps.push_back(std::move(axes));
    }
    j["h"] = std::move(hs);
    j["r"] = std::move(rs);
    j["perms"] = std::move(ps);
    return j;
}

HChain hchain_from_json(const Json& j) {
    try {
        HChain c;
        c.m = j.at("m").get<std::size_t>();
        for (const Json& h : j.at("h")) c.h.push_back(poly_from_json(h));
        for (const Json& r : j.at("r")) c.r.push_back(poly_from_json(r));
        for (const Json& level : j.at("perms")) {
            std::vector<std::vector<std::size_t>> axes;
            for (const Json& perm : level) {
                std::vector<std::size_t> p = perm.get<std::vector<std::size_t>>();
                for (std::size_t& v : p) {
                    if (v == 0) throw ParseError("permutation images are 1-based");
                    --v;
                }
                axes.push_back(std::move(p));
            }
            c.perms.push_back(std::move(axes));
        }
        return c;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("bad h-chain JSON: ") + ex.what());
    }
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (std::size_t i = 16; i-- > 0;) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string tensor_hash(const Tensor& t) { return fnv1a_hex(dump_canonical(tensor_to_json(t))); }

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& ex) {
        throw ParseError("cannot parse '" + path + "': " + ex.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << dump_canonical(j);
}

} // namespace partrank
