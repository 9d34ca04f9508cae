#include "sgeom/catalog.hpp"

#include "sgeom/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sgeom {

namespace {

std::string fmt_value(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

std::string fmt_point(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.12g", p[i]);
        s += buf;
    }
    s += ")";
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_number(const std::string& s, std::size_t line) {
    const std::string t = trim(s);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw SpecError(line, "expected a number, got '" + t + "'");
    return v;
}

}  // namespace

MetricField MetricSpec::metric() const {
    const std::size_t n = dim();
    std::vector<std::vector<std::string>> upper(n);
    for (std::size_t i = 0; i < n; ++i) upper[i].assign(n - i, "0");
    for (const auto& [i, j, text] : entries) upper[i][j - i] = text;
    return MetricField::from_strings(chart(), upper);
}

std::vector<VectorField> MetricSpec::frame_fields() const {
    std::vector<VectorField> out;
    if (!frame) return out;
    const Chart c = chart();
    for (const auto& comps : *frame) out.push_back(VectorField::from_strings(c, comps));
    return out;
}

std::vector<std::pair<double, double>> MetricSpec::sample_box() const {
    if (box.size() == dim()) return box;
    return std::vector<std::pair<double, double>>(dim(), {-2.0, 2.0});
}

namespace {

MetricSpec diag_spec(std::string name, std::vector<std::string> coords,
                     std::vector<std::string> diag) {
    MetricSpec s;
    s.name = std::move(name);
    s.coords = std::move(coords);
    for (std::size_t i = 0; i < diag.size(); ++i)
        if (diag[i] != "0") s.entries.emplace_back(i, i, diag[i]);
    return s;
}

std::vector<std::vector<std::string>> coordinate_frame(std::size_t n) {
    std::vector<std::vector<std::string>> f(n, std::vector<std::string>(n, "0"));
    for (std::size_t i = 0; i < n; ++i) f[i][i] = "1";
    return f;
}

}  // namespace

std::vector<MetricSpec> catalog() {
    std::vector<MetricSpec> cat;

    {
        MetricSpec s = diag_spec("euclidean2", {"x", "y"}, {"1", "1"});
        s.points = {{0.3, -0.7}, {1.2, 0.4}};
        s.expect = "non-degenerate";
        s.frame = coordinate_frame(2);
        cat.push_back(std::move(s));
    }
    {
        MetricSpec s = diag_spec("euclidean3", {"x", "y", "z"}, {"1", "1", "1"});
        s.points = {{0.3, -0.7, 0.5}, {1.2, 0.4, -0.9}};
        s.expect = "non-degenerate";
        s.frame = coordinate_frame(3);
        cat.push_back(std::move(s));
    }
    {
        MetricSpec s = diag_spec("euclidean4", {"x", "y", "z", "w"}, {"1", "1", "1", "1"});
        s.points = {{0.3, -0.7, 0.5, 0.1}, {1.2, 0.4, -0.9, -0.2}};
        s.expect = "non-degenerate";
        cat.push_back(std::move(s));
    }
    {
        MetricSpec s = diag_spec("minkowski2", {"t", "x"}, {"-1", "1"});
        s.points = {{0.2, -0.4}, {-1.1, 0.8}};
        s.expect = "non-degenerate";
        cat.push_back(std::move(s));
    }
    {
        MetricSpec s = diag_spec("minkowski4", {"t", "x", "y", "z"}, {"-1", "1", "1", "1"});
        s.points = {{0.2, -0.4, 0.7, -0.1}, {-1.1, 0.8, 0.3, 0.6}};
        s.expect = "non-degenerate";
        cat.push_back(std::move(s));
    }
    {
        MetricSpec s = diag_spec("sphere2", {"theta", "phi"}, {"1", "sin(theta)^2"});
        s.points = {{0.5235987755982988, 0.3},
                    {0.7853981633974483, 1.0},
                    {1.0471975511965976, -0.5}};
        s.expect = "non-degenerate";
        // keep theta away from the poles, where sin(theta) vanishes
        s.box = {{0.4, 2.7}, {-3.0, 3.0}};
        s.frame = {{"1", "0"}, {"0", "1/sin(theta)"}};
        cat.push_back(std::move(s));
    }
    {
        MetricSpec s = diag_spec("polar2", {"u", "v"}, {"1", "u^2"});
        s.points = {{-1.0, 0.5}, {-0.5, 0.5}, {0.0, 0.5}, {0.5, 0.5}, {1.0, 0.5}};
        s.locus_hint = "u = 0";
        s.expect = "radical-stationary";
        s.box = {{0.2, 2.0}, {-2.0, 2.0}};
        cat.push_back(std::move(s));
    }
    {
        MetricSpec s = diag_spec("lightcone2", {"u", "v"}, {"1", "u"});
        s.points = {{-1.0, 0.5}, {0.0, 0.5}, {1.0, 0.5}};
        s.locus_hint = "u = 0";
        s.expect = "not-radical-stationary";
        s.box = {{0.2, 2.0}, {-2.0, 2.0}};
        cat.push_back(std::move(s));
    }
    {
        MetricSpec s = diag_spec("degenerate_const", {"x", "y", "z"}, {"1", "1", "0"});
        s.points = {{0.4, -0.3, 0.8}, {1.1, 0.2, -0.6}};
        s.expect = "radical-stationary";
        cat.push_back(std::move(s));
    }
    {
        MetricSpec s = diag_spec("friedmann_like", {"t", "x", "y"}, {"-1", "t^2", "t^2"});
        s.points = {{-1.0, 0.3, 0.4}, {0.0, 0.3, 0.4}, {1.0, 0.3, 0.4}};
        s.locus_hint = "t = 0";
        s.expect = "radical-stationary";
        s.box = {{0.3, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}};
        cat.push_back(std::move(s));
    }

    return cat;
}

MetricSpec catalog_entry(const std::string& name) {
    for (MetricSpec& s : catalog())
        if (s.name == name) return std::move(s);
    throw std::out_of_range("no catalog entry named '" + name + "'");
}

SpecError::SpecError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

MetricSpec parse_spec_text(const std::string& text) {
    struct RawEntry {
        std::size_t i, j, line;
        std::string expr;
    };
    MetricSpec spec;
    std::optional<std::size_t> dim;
    std::size_t coords_line = 0;
    std::vector<RawEntry> raw_entries;
    std::vector<std::pair<std::vector<double>, std::size_t>> raw_points;
    std::vector<std::pair<std::vector<double>, std::size_t>> raw_boxes;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw SpecError(lineno, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "name") {
            spec.name = value;
        } else if (key == "dim") {
            const double d = parse_number(value, lineno);
            if (d != std::floor(d) || d < 1 || d > 8)
                throw SpecError(lineno, "dim must be an integer in [1, 8]");
            dim = static_cast<std::size_t>(d);
        } else if (key == "coords") {
            spec.coords = split_commas(value);
            coords_line = lineno;
            for (const std::string& c : spec.coords)
                if (c.empty()) throw SpecError(lineno, "empty coordinate name");
        } else if (key == "point") {
            std::vector<double> p;
            for (const std::string& s : split_commas(value)) p.push_back(parse_number(s, lineno));
            raw_points.emplace_back(std::move(p), lineno);
        } else if (key == "box") {
            std::vector<double> b;
            for (const std::string& s : split_commas(value)) b.push_back(parse_number(s, lineno));
            raw_boxes.emplace_back(std::move(b), lineno);
        } else if (key == "locus_hint") {
            // split on the first '=', so free text like "u = 0" survives intact
            spec.locus_hint = value;
        } else if (key == "expect") {
            spec.expect = value;
        } else if (key.size() > 1 && key[0] == 'g' && key[1] == '[') {
            std::size_t i = 0, j = 0;
            if (std::sscanf(key.c_str(), "g[%zu][%zu]", &i, &j) != 2)
                throw SpecError(lineno, "malformed metric entry key '" + key + "'");
            raw_entries.push_back({i, j, lineno, value});
        } else {
            throw SpecError(lineno, "unknown key '" + key + "'");
        }
    }

    if (!dim) throw SpecError(lineno, "missing 'dim'");
    if (spec.coords.empty()) throw SpecError(lineno, "missing 'coords'");
    if (spec.coords.size() != *dim)
        throw SpecError(coords_line, "dim = " + std::to_string(*dim) + " but " +
                                         std::to_string(spec.coords.size()) +
                                         " coordinate names declared");
    if (spec.name.empty()) spec.name = "unnamed";

    const std::size_t n = *dim;
    for (const RawEntry& e : raw_entries) {
        if (e.i >= n || e.j >= n)
            throw SpecError(e.line, "metric index out of range for dim " + std::to_string(n));
        if (e.i > e.j)
            throw SpecError(e.line, "only upper-triangle entries accepted, use g[" +
                                        std::to_string(e.j) + "][" + std::to_string(e.i) + "]");
        try {
            parse(e.expr, spec.coords);
        } catch (const ParseError& pe) {
            throw SpecError(e.line, std::string("in g[") + std::to_string(e.i) + "][" +
                                        std::to_string(e.j) + "]: " + pe.what());
        }
        spec.entries.emplace_back(e.i, e.j, e.expr);
    }
    for (auto& [p, l] : raw_points) {
        if (p.size() != n)
            throw SpecError(l, "point has " + std::to_string(p.size()) +
                                   " coordinates, expected " + std::to_string(n));
        spec.points.push_back(std::move(p));
    }
    for (auto& [b, l] : raw_boxes) {
        if (b.size() != 2 * n)
            throw SpecError(l, "box needs " + std::to_string(2 * n) +
                                   " values (lo, hi per coordinate)");
        for (std::size_t i = 0; i < n; ++i) {
            if (!(b[2 * i] < b[2 * i + 1])) throw SpecError(l, "box lo must be < hi");
            spec.box.emplace_back(b[2 * i], b[2 * i + 1]);
        }
    }
    return spec;
}

MetricSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

std::uint64_t spec_digest(const MetricSpec& spec) {
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    };
    feed(spec.name);
    feed(std::to_string(spec.dim()));
    for (const std::string& c : spec.coords) feed(c);
    for (const auto& [i, j, text] : spec.entries) {
        feed(std::to_string(i));
        feed(std::to_string(j));
        feed(text);
    }
    for (const Point& p : spec.points) feed(fmt_point(p));
    feed(spec.locus_hint);
    feed(spec.expect);
    return h;
}

const char* RunReport::version() { return "sgeom 1.0.0"; }

std::string RunReport::text() const {
    std::vector<const CheckRecord*> order;
    order.reserve(records.size());
    for (const CheckRecord& r : records) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(), [](const CheckRecord* a, const CheckRecord* b) {
        if (a->point != b->point) return a->point < b->point;
        if (a->name != b->name) return a->name < b->name;
        return false;  // keep insertion order within a (point, name) group
    });

    char head[160];
    std::snprintf(head, sizeof(head), "REPORT %s SPEC %s DIGEST %016llx SEED %llu TOL %g RANKTOL %g\n",
                  version(), spec_name.c_str(), static_cast<unsigned long long>(digest),
                  static_cast<unsigned long long>(options.seed), options.tol, options.rank_tol);
    std::string out = head;

    int failed = 0;
    for (const CheckRecord* r : order) {
        if (!r->pass) ++failed;
        out += "CHECK " + r->name + (r->detail.empty() ? "" : r->detail) + " POINT " +
               fmt_point(r->point) + " LEFT " + fmt_value(r->left) + " RIGHT " +
               fmt_value(r->right) + " RESID " + fmt_value(r->resid) + " FLAGS ";
        if (r->flags.empty()) {
            out += "-";
        } else {
            for (std::size_t i = 0; i < r->flags.size(); ++i) {
                if (i) out += ",";
                out += r->flags[i];
            }
        }
        out += std::string(" VERDICT ") + (r->pass ? "pass" : "fail") + "\n";
    }

    out += "SUMMARY " + spec_name + " checks=" + std::to_string(records.size()) +
           " failures=" + std::to_string(failed) +
           " classification=" + (verdict.empty() ? "-" : verdict) +
           " result=" + (passed ? "pass" : "fail") + " exit=" + std::to_string(exit_code) + "\n";
    return out;
}

namespace {

std::vector<Point> sample_points(const MetricSpec& spec, const RunOptions& opt) {
    std::vector<Point> pts = spec.points;
    if (opt.random_points > 0) {
        std::mt19937_64 rng(opt.seed);
        const auto box = spec.sample_box();
        for (int i = 0; i < opt.random_points; ++i) pts.push_back(random_point(rng, box));
    }
    return pts;
}

RunReport report_shell(const MetricSpec& spec, const RunOptions& opt) {
    RunReport rep;
    rep.spec_name = spec.name;
    rep.digest = spec_digest(spec);
    rep.options = opt;
    return rep;
}

void finalize(RunReport& rep) {
    bool any_fail = false;
    for (const CheckRecord& r : rep.records) any_fail |= !r.pass;
    if (any_fail) rep.exit_code = 1;
    rep.passed = rep.exit_code == 0;
}

}  // namespace

RunReport cmd_check(const MetricSpec& spec, const RunOptions& opt) {
    RunReport rep = report_shell(spec, opt);
    const MetricField g = spec.metric();
    const KoszulEvaluator k(g, opt.rank_tol);
    const std::vector<Point> pts = sample_points(spec, opt);
    const std::size_t n = spec.dim();

    const ClassificationReport cls = k.radical_stationary_check(pts, opt.tol);
    rep.verdict = verdict_name(cls.verdict);

    for (const PointClassification& pc : cls.points) {
        const bool on_locus = pc.rank < static_cast<int>(n);
        CheckRecord rank;
        rank.name = "rank";
        rank.point = pc.point;
        rank.left = static_cast<double>(pc.rank);
        rank.right = static_cast<double>(n);
        if (on_locus) rank.flags.push_back("on-locus");
        rep.records.push_back(std::move(rank));

        CheckRecord rs;
        rs.name = "radical-stationary";
        rs.point = pc.point;
        rs.left = pc.max_residual;
        rs.resid = pc.max_residual;
        rs.pass = pc.max_residual <= opt.tol;
        if (on_locus) rs.flags.push_back("on-locus");
        if (!rs.pass) rs.flags.push_back("out-of-image");
        rep.records.push_back(std::move(rs));
    }

    if (!spec.locus_hint.empty() && spec.points.size() >= 2) {
        const Chart c = spec.chart();
        const VectorField last = VectorField::coordinate(c, n - 1);
        const VectorField first = VectorField::coordinate(c, 0);
        const ProbeReport pr = k.semi_regular_probe(last, first, first, last,
                                                    spec.points.front(), spec.points.back());
        Point mid(n);
        for (std::size_t i = 0; i < n; ++i)
            mid[i] = 0.5 * (spec.points.front()[i] + spec.points.back()[i]);

        CheckRecord lim;
        lim.name = "probe-limits";
        lim.point = mid;
        lim.left = pr.limit_below;
        lim.right = pr.limit_above;
        lim.resid = std::abs(pr.limit_below - pr.limit_above);
        lim.pass = pr.finite && pr.converged && pr.limits_agree;
        if (!pr.finite) lim.flags.push_back("non-finite");
        if (!pr.converged) lim.flags.push_back("non-converged");
        rep.records.push_back(std::move(lim));

        CheckRecord pt;
        pt.name = "probe-pointwise";
        pt.point = mid;
        pt.left = pr.midpoint_value;
        pt.right = 0.5 * (pr.limit_below + pr.limit_above);
        pt.resid = std::abs(pt.left - pt.right);
        pt.pass = true;  // informational: a gap here is the signature of the locus
        if (!pr.matches_pointwise) pt.flags.push_back("limit-differs-from-pointwise");
        if (pr.midpoint_image_residual > opt.tol) pt.flags.push_back("out-of-image");
        rep.records.push_back(std::move(pt));
    }

    finalize(rep);
    if (!spec.expect.empty() && rep.verdict != spec.expect) rep.exit_code = 1;
    if (cls.verdict == Verdict::NotRadicalStationary) rep.exit_code = 1;
    rep.passed = rep.exit_code == 0;
    return rep;
}

RunReport cmd_curvature(const MetricSpec& spec, const RunOptions& opt) {
    RunReport rep = report_shell(spec, opt);
    const RiemannEvaluator r(spec.metric(), opt.rank_tol);
    const std::size_t n = spec.dim();

    for (const Point& p : sample_points(spec, opt)) {
        const RiemannTable tab = r.riemann_table(p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = k + 1; l < n; ++l) {
                        CheckRecord e;
                        e.name = "riemann";
                        e.detail = "[" + std::to_string(i) + "," + std::to_string(j) + "][" +
                                   std::to_string(k) + "," + std::to_string(l) + "]";
                        e.point = p;
                        e.left = tab.entry(i, j, k, l);
                        e.right = e.left;
                        if (tab.on_locus) e.flags.push_back("on-locus");
                        if (tab.image_residual > opt.tol) e.flags.push_back("out-of-image");
                        rep.records.push_back(std::move(e));
                    }

        const SymmetryReport sym = symmetry_check(tab);
        const struct {
            const char* name;
            double resid;
        } checks[] = {
            {"symmetry-antisym-first", sym.antisym_first_pair},
            {"symmetry-antisym-second", sym.antisym_second_pair},
            {"symmetry-pair-exchange", sym.pair_symmetry},
            {"symmetry-bianchi", sym.first_bianchi},
        };
        for (const auto& c : checks) {
            CheckRecord s;
            s.name = c.name;
            s.point = p;
            s.left = c.resid;
            s.resid = c.resid / sym.scale;
            s.pass = s.resid <= opt.tol;
            if (tab.on_locus) s.flags.push_back("on-locus");
            rep.records.push_back(std::move(s));
        }
    }

    finalize(rep);
    return rep;
}

RunReport cmd_verify(const MetricSpec& spec, const RunOptions& opt) {
    RunReport rep = report_shell(spec, opt);
    const KoszulEvaluator k(spec.metric(), opt.rank_tol);
    const std::vector<VectorField> frame = spec.frame_fields();

    VerifyOptions vo;
    vo.seed = opt.seed;
    vo.tol = opt.tol;
    const VerifySummary sum =
        verify_suite(k, sample_points(spec, opt), frame.empty() ? nullptr : &frame, vo);

    for (const ResidualReport& r : sum.reports) {
        CheckRecord c;
        c.name = r.identity;
        c.detail = r.fields.empty() ? "" : "{" + r.fields + "}";
        c.point = r.point;
        c.left = r.left;
        c.right = r.right;
        c.resid = r.rel_residual;
        c.pass = r.rel_residual <= opt.tol;
        if (r.on_locus) c.flags.push_back("on-locus");
        if (r.out_of_image) c.flags.push_back("out-of-image");
        rep.records.push_back(std::move(c));
    }

    finalize(rep);
    return rep;
}

}  // namespace sgeom
