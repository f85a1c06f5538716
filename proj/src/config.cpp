#include "comblat/config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "comblat/limits.hpp"

namespace comblat {

namespace {

const Json* find_key(const Json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

[[noreturn]] void bad_field(const std::string& field, const std::string& expected, const Json& got) {
    throw ParseError("field '" + field + "': expected " + expected + ", got " + got.type_name());
}

double as_number(const Json& j, const std::string& field) {
    if (!j.is_number()) bad_field(field, "a number", j);
    return j.get<double>();
}

std::int64_t as_integer(const Json& j, const std::string& field) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) bad_field(field, "an integer", j);
    return j.get<std::int64_t>();
}

void reject_unknown_keys(const Json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!known.count(key))
            throw ParseError("unknown field '" + key + "' in " + where);
    }
}

CombWindow parse_window(const Json& j) {
    CombWindow w;
    if (j.is_array()) {
        if (j.size() != 2) throw ParseError("field 'window': array form must be [n_min, n_max]");
        w.n_min = as_integer(j[0], "window[0]");
        w.n_max = as_integer(j[1], "window[1]");
        return w;
    }
    if (!j.is_object()) bad_field("window", "an object {n_min, n_max} or array [n_min, n_max]", j);
    reject_unknown_keys(j, {"n_min", "n_max"}, "window");
    const Json* lo = find_key(j, "n_min");
    const Json* hi = find_key(j, "n_max");
    if (!lo || !hi) throw ParseError("field 'window': requires both n_min and n_max");
    w.n_min = as_integer(*lo, "window.n_min");
    w.n_max = as_integer(*hi, "window.n_max");
    return w;
}

std::vector<OpoSpec> parse_opos(const Json& j) {
    if (!j.is_array()) bad_field("opos", "an array", j);
    std::vector<OpoSpec> specs;
    specs.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& item = j[i];
        const std::string where = "opos[" + std::to_string(i) + "]";
        if (!item.is_object()) bad_field(where, "an object {delta_m, copies}", item);
        reject_unknown_keys(item, {"delta_m", "copies"}, where);
        const Json* dm = find_key(item, "delta_m");
        if (!dm) throw ParseError("field '" + where + "': missing delta_m");
        OpoSpec spec;
        spec.delta_m = as_integer(*dm, where + ".delta_m");
        if (const Json* c = find_key(item, "copies"))
            spec.copies = static_cast<int>(as_integer(*c, where + ".copies"));
        specs.push_back(spec);
    }
    return specs;
}

std::vector<std::vector<int>> signs_from_matrix(const Eigen::MatrixXd& m) {
    std::vector<std::vector<int>> signs(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        signs[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            signs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j) > 0.0 ? 1 : -1;
    }
    return signs;
}

Eigen::MatrixXd matrix_from_signs(const std::vector<std::vector<int>>& signs) {
    const auto order = static_cast<Eigen::Index>(signs.size());
    Eigen::MatrixXd m(order, order);
    const double scale = 1.0 / std::sqrt(static_cast<double>(order));
    for (Eigen::Index i = 0; i < order; ++i) {
        const auto& row = signs[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != order)
            throw ValidationError("splitter sign matrix must be square");
        for (Eigen::Index j = 0; j < order; ++j) {
            const int s = row[static_cast<std::size_t>(j)];
            if (s != 1 && s != -1)
                throw ValidationError("splitter sign entries must be +1 or -1, got " +
                                      std::to_string(s));
            m(i, j) = s * scale;
        }
    }
    return m;
}

SplitterSpec parse_splitter(const Json& j, const std::filesystem::path& base_dir, int order) {
    SplitterSpec spec;
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name != "sylvester")
            throw ValidationError("unknown splitter '" + name + "' (use \"sylvester\", {file}, or {signs})");
        if (!std::has_single_bit(static_cast<unsigned>(order)))
            throw ValidationError("unsupported splitter order " + std::to_string(order) +
                                  ": the Sylvester construction only reaches powers of two; "
                                  "supply a {\"file\": ...} or {\"signs\": ...} splitter of order " +
                                  std::to_string(order));
        spec.kind = SplitterSpec::Kind::Sylvester;
        return spec;
    }
    if (!j.is_object()) bad_field("splitter", "\"sylvester\" or an object {file} / {signs}", j);
    reject_unknown_keys(j, {"file", "signs"}, "splitter");

    Eigen::MatrixXd m;
    if (const Json* f = find_key(j, "file")) {
        if (!f->is_string()) bad_field("splitter.file", "a string path", *f);
        std::filesystem::path p = f->get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        m = load_splitter_matrix(p);
    } else if (const Json* s = find_key(j, "signs")) {
        if (!s->is_array()) bad_field("splitter.signs", "an array of sign rows", *s);
        std::vector<std::vector<int>> signs;
        for (const Json& row : *s) {
            if (!row.is_array()) bad_field("splitter.signs", "an array of arrays", row);
            std::vector<int> r;
            for (const Json& v : row) r.push_back(static_cast<int>(as_integer(v, "splitter.signs")));
            signs.push_back(std::move(r));
        }
        m = matrix_from_signs(signs);
    } else {
        throw ParseError("field 'splitter': object form requires 'file' or 'signs'");
    }

    if (m.rows() != order)
        throw ValidationError("splitter order " + std::to_string(m.rows()) +
                              " does not match 2D = " + std::to_string(order));
    try {
        user_splitter(m);  // orthogonality + balance gate
    } catch (const Error& e) {
        throw ValidationError(std::string("splitter: ") + e.what());
    }
    spec.kind = SplitterSpec::Kind::Signs;
    spec.signs = signs_from_matrix(m);
    return spec;
}

void validate(const PipelineConfig& c) {
    if (c.window.n_min > c.window.n_max)
        throw ValidationError("empty comb window: n_min " + std::to_string(c.window.n_min) +
                              " > n_max " + std::to_string(c.window.n_max));
    if (c.opos.empty()) throw ValidationError("at least one OPO is required");

    std::set<std::int64_t> seen_dm;
    for (const auto& spec : c.opos) {
        if (spec.delta_m < 1)
            throw ValidationError("delta_m must be a positive integer, got " +
                                  std::to_string(spec.delta_m));
        if (spec.copies < 1)
            throw ValidationError("copies must be a positive integer, got " +
                                  std::to_string(spec.copies));
        if (!seen_dm.insert(spec.delta_m).second)
            throw ValidationError("duplicate delta_m " + std::to_string(spec.delta_m) +
                                  ": lattice offsets must be distinct");
        if (spec.copies != c.opos.front().copies)
            throw ValidationError("copies must be uniform across OPOs (compound indexing "
                                  "assumes one copy count)");
        try {
            pump_indices(spec);
        } catch (const EvenPumpIndex& e) {
            throw ValidationError(std::string("even pump index: ") + e.what());
        }
    }

    if (!(c.alpha >= 0.0) || !std::isfinite(c.alpha))
        throw ValidationError("alpha must be a finite nonnegative real");
    for (double th : c.thetas)
        if (!std::isfinite(th)) throw ValidationError("thetas must be finite reals");
    if (c.thetas.empty()) throw ValidationError("thetas must not be empty");
    if (c.samples < 0) throw ValidationError("samples must be nonnegative");
    if (c.samples == 1) throw ValidationError("samples must be 0 or at least 2");
    if (c.samples > 0) {
        const std::int64_t modes = 2 * c.dimensions() * c.window.size();
        if (modes > kDenseCheckLimit)
            throw ValidationError("sampling needs the dense covariance, which is limited to " +
                                  std::to_string(kDenseCheckLimit) + " qumodes; this config has " +
                                  std::to_string(modes));
    }
    if (c.workers < 1) throw ValidationError("workers must be a positive integer");
}

}  // namespace

PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config root must be a JSON object");
    reject_unknown_keys(doc,
                        {"window", "opos", "alpha", "thetas", "seed", "samples", "workers",
                         "exports", "splitter"},
                        "config");

    PipelineConfig c;
    const Json* window = find_key(doc, "window");
    if (!window) throw ParseError("field 'window': required");
    c.window = parse_window(*window);

    const Json* opos = find_key(doc, "opos");
    if (!opos) throw ParseError("field 'opos': required");
    c.opos = parse_opos(*opos);

    if (const Json* a = find_key(doc, "alpha")) c.alpha = as_number(*a, "alpha");
    if (const Json* t = find_key(doc, "thetas")) {
        if (!t->is_array()) bad_field("thetas", "an array of numbers", *t);
        c.thetas.clear();
        for (const Json& v : *t) c.thetas.push_back(as_number(v, "thetas"));
    } else {
        c.thetas = {0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0};
    }
    if (const Json* s = find_key(doc, "seed")) {
        if (!s->is_number_integer() && !s->is_number_unsigned()) bad_field("seed", "an integer", *s);
        if (s->is_number_integer() && s->get<std::int64_t>() < 0)
            throw ValidationError("seed must be nonnegative");
        c.seed = s->get<std::uint64_t>();
    }
    if (const Json* s = find_key(doc, "samples")) c.samples = as_integer(*s, "samples");
    if (const Json* w = find_key(doc, "workers"))
        c.workers = static_cast<int>(as_integer(*w, "workers"));
    if (const Json* e = find_key(doc, "exports")) {
        if (!e->is_array()) bad_field("exports", "an array of selector strings", *e);
        c.exports.clear();
        for (const Json& v : *e) {
            if (!v.is_string()) bad_field("exports", "an array of strings", v);
            const std::string sel = v.get<std::string>();
            if (sel != "report" && sel != "hgraph" && sel != "matrices" && sel != "dot")
                throw ValidationError("unknown export selector '" + sel +
                                      "' (expected report, hgraph, matrices, or dot)");
            if (std::find(c.exports.begin(), c.exports.end(), sel) == c.exports.end())
                c.exports.push_back(sel);
        }
    } else {
        c.exports = {"report"};
    }

    validate(c);

    const int order = 2 * c.dimensions();
    if (const Json* sp = find_key(doc, "splitter"))
        c.splitter = parse_splitter(*sp, base_dir, order);
    else
        c.splitter = parse_splitter(Json("sylvester"), base_dir, order);
    return c;
}

PipelineConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

Json config_to_json(const PipelineConfig& c) {
    Json j;
    j["window"] = Json{{"n_min", c.window.n_min}, {"n_max", c.window.n_max}};
    Json opos = Json::array();
    for (const auto& spec : c.opos)
        opos.push_back(Json{{"delta_m", spec.delta_m}, {"copies", spec.copies}});
    j["opos"] = std::move(opos);
    j["alpha"] = c.alpha;
    j["thetas"] = c.thetas;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["workers"] = c.workers;
    j["exports"] = c.exports;
    if (c.splitter.kind == SplitterSpec::Kind::Sylvester)
        j["splitter"] = "sylvester";
    else
        j["splitter"] = Json{{"signs", c.splitter.signs}};
    return j;
}

BalancedSplitter make_splitter(const PipelineConfig& c) {
    const int order = 2 * c.dimensions();
    if (c.splitter.kind == SplitterSpec::Kind::Sylvester) return sylvester_splitter(order);
    Eigen::MatrixXd m = matrix_from_signs(c.splitter.signs);
    if (m.rows() != order)
        throw ValidationError("splitter order " + std::to_string(m.rows()) +
                              " does not match 2D = " + std::to_string(order));
    return user_splitter(m);
}

Eigen::MatrixXd load_splitter_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open splitter file " + path.string());

    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%' || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof()) throw ParseError("splitter file " + path.string() + ": non-numeric entry");
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("splitter file " + path.string() + ": no rows");
    const auto order = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(order, order);
    for (Eigen::Index i = 0; i < order; ++i) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != order)
            throw ParseError("splitter file " + path.string() + ": matrix must be square");
        for (Eigen::Index j = 0; j < order; ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    bool all_unit = true;
    for (Eigen::Index i = 0; i < order && all_unit; ++i)
        for (Eigen::Index j = 0; j < order && all_unit; ++j)
            if (std::abs(std::abs(m(i, j)) - 1.0) > 1e-12) all_unit = false;
    if (all_unit) m /= std::sqrt(static_cast<double>(order));
    return m;
}

}  // namespace comblat
