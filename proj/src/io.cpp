#include "gkz/io.hpp"

#include "gkz/rank.hpp"
#include "gkz/series.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gkz {

using Json = nlohmann::ordered_json;

ParseError::ParseError(std::string code_, std::size_t line_, std::size_t column_,
                       const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(column_) +
                         " [" + code_ + "]: " + msg),
      code(std::move(code_)),
      line(line_),
      column(column_) {}

namespace {

struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;  // 1-based
};

// Tokens of one line, comments stripped.
std::vector<Token> tokenize_line(const std::string& line, std::size_t lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back(Token{line.substr(start, i - start), lineno, start + 1});
    }
    return out;
}

bool looks_like_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Int parse_int_token(const Token& t) {
    if (!looks_like_integer(t.text))
        throw ParseError("E_INT", t.line, t.column, "malformed integer '" + t.text + "'");
    return Int(t.text);
}

unsigned long parse_count(const Token& t, const std::string& what) {
    Int v = parse_int_token(t);
    if (v < 0) throw ParseError("E_INT", t.line, t.column, what + " must be nonnegative");
    if (!v.fits_ulong_p()) throw ParseError("E_INT", t.line, t.column, what + " is out of range");
    return v.get_ui();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string expect_kv(const Token& t, const std::string& key) {
    const std::string prefix = key + "=";
    if (t.text.rfind(prefix, 0) != 0)
        throw ParseError("E_HEADER", t.line, t.column, "expected '" + prefix + "...'");
    return t.text.substr(prefix.size());
}

ParsedInput parse_matrix_mode(const std::vector<std::vector<Token>>& lines) {
    const std::vector<Token>& header = lines.front();
    if (header.size() != 4)
        throw ParseError("E_HEADER", header.front().line, header.front().column,
                         "matrix header is 'A r=<r> n=<n> blocks=<N1,...,Nr>'");
    std::size_t r = parse_count(Token{expect_kv(header[1], "r"), header[1].line, header[1].column},
                                "r");
    std::size_t n = parse_count(Token{expect_kv(header[2], "n"), header[2].line, header[2].column},
                                "n");
    if (r == 0) throw ParseError("E_HEADER", header[1].line, header[1].column, "r must be >= 1");

    std::vector<std::size_t> blocks;
    std::size_t total = 0;
    for (const std::string& part : split(expect_kv(header[3], "blocks"), ',')) {
        Token bt{part, header[3].line, header[3].column};
        std::size_t b = parse_count(bt, "block size");
        if (b == 0) throw ParseError("E_BLOCKS", bt.line, bt.column, "block sizes must be >= 1");
        blocks.push_back(b);
        total += b;
    }
    if (blocks.size() != r)
        throw ParseError("E_BLOCKS", header[3].line, header[3].column,
                         "expected " + std::to_string(r) + " block sizes");

    if (lines.size() < 1 + r + n) {
        const Token& last = lines.back().front();
        throw ParseError("E_ROWLEN", last.line, last.column,
                         "expected " + std::to_string(r + n) + " matrix rows");
    }
    if (lines.size() > 1 + r + n) {
        const Token& extra = lines[1 + r + n].front();
        throw ParseError("E_EXTRA", extra.line, extra.column, "unexpected trailing content");
    }

    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < r + n; ++i) {
        const std::vector<Token>& lt = lines[1 + i];
        if (lt.size() != total)
            throw ParseError("E_ROWLEN", lt.front().line, lt.front().column,
                             "row has " + std::to_string(lt.size()) + " entries, expected " +
                                 std::to_string(total));
        IntVec row;
        for (const Token& t : lt) row.push_back(parse_int_token(t));
        rows.push_back(row);
    }

    ParsedInput out;
    out.config.r = r;
    out.config.n = n;
    out.config.block_sizes = blocks;
    for (std::size_t j = 0; j < total; ++j) {
        IntVec col(r + n);
        for (std::size_t i = 0; i < r + n; ++i) col[i] = rows[i][j];
        out.config.columns.push_back(col);
    }
    if (rational_rank(out.config.matrix()) != r + n)
        throw ParseError("E_RANK", header.front().line, header.front().column,
                         "matrix rank is not r+n");
    return out;
}

ParsedInput parse_polytope_mode(const std::vector<std::vector<Token>>& lines) {
    std::vector<PointSet> deltas;
    std::size_t n = 0;
    std::size_t i = 0;
    while (i < lines.size()) {
        const std::vector<Token>& header = lines[i];
        if (header.front().text != "DELTA")
            throw ParseError("E_HEADER", header.front().line, header.front().column,
                             "expected 'DELTA <n>'");
        if (header.size() != 2)
            throw ParseError("E_HEADER", header.front().line, header.front().column,
                             "DELTA header takes exactly the dimension");
        std::size_t dim = parse_count(header[1], "dimension");
        if (dim == 0)
            throw ParseError("E_HEADER", header[1].line, header[1].column, "dimension must be >= 1");
        if (deltas.empty())
            n = dim;
        else if (dim != n)
            throw ParseError("E_DIM", header[1].line, header[1].column,
                             "all polytopes must share the dimension");
        ++i;
        std::vector<IntVec> pts;
        while (i < lines.size() && lines[i].front().text != "DELTA") {
            const std::vector<Token>& lt = lines[i];
            if (lt.size() != dim)
                throw ParseError("E_ROWLEN", lt.front().line, lt.front().column,
                                 "point has " + std::to_string(lt.size()) + " coordinates, expected " +
                                     std::to_string(dim));
            IntVec p;
            for (const Token& t : lt) p.push_back(parse_int_token(t));
            pts.push_back(p);
            ++i;
        }
        if (pts.empty())
            throw ParseError("E_EMPTY", header.front().line, header.front().column,
                             "DELTA section has no points");
        deltas.push_back(PointSet(dim, pts));
    }
    ParsedInput out;
    out.polytope_mode = true;
    try {
        out.config = build_config(deltas);
    } catch (const std::invalid_argument& e) {
        throw ParseError("E_RANK", lines.front().front().line, lines.front().front().column,
                         e.what());
    }
    return out;
}

}  // namespace

ParsedInput parse_input(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::vector<Token> toks = tokenize_line(line, lineno);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    if (lines.empty()) throw ParseError("E_EMPTY", 1, 1, "input contains no data");
    const std::string& kind = lines.front().front().text;
    if (kind == "A") return parse_matrix_mode(lines);
    if (kind == "DELTA") return parse_polytope_mode(lines);
    throw ParseError("E_HEADER", lines.front().front().line, lines.front().front().column,
                     "input must start with 'A' or 'DELTA'");
}

std::string serialize(const AConfig& c) {
    std::ostringstream os;
    os << "A r=" << c.r << " n=" << c.n << " blocks=";
    for (std::size_t i = 0; i < c.block_sizes.size(); ++i) {
        if (i) os << ',';
        os << c.block_sizes[i];
    }
    os << '\n';
    IntMatrix m = c.matrix();
    os << m.to_string();
    return os.str();
}

std::string digest_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << "0123456789abcdef"[(h >> (4 * i)) & 0xf];
    return os.str();
}

std::string format_rat(const Rat& q) { return q.get_str(); }

namespace {

long long to_ll(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("report entry exceeds 64 bits");
    return v.get_si();
}

Json json_int_matrix(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_ll(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json json_rat_matrix(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_rat(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

std::string rat_matrix_text(const RatMatrix& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << format_rat(m.at(i, j));
        }
        os << '\n';
    }
    return os.str();
}

std::string rat_vec_text(const RatVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << format_rat(v[i]);
    }
    os << ')';
    return os.str();
}

std::string int_vec_text(const IntVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i].get_str();
    }
    os << ')';
    return os.str();
}

const char* verdict_str(NonresonanceVerdict v) {
    return v == NonresonanceVerdict::Pass ? "pass" : "indeterminate";
}

struct ReportBuilder {
    const JobSpec& job;
    std::ostringstream text;
    Json verdicts = Json::object();
    Json matrices = Json::object();
    Json caveats = Json::array();
    Json series_count;  // null unless set
    Json predicted_rank;

    explicit ReportBuilder(const JobSpec& j) : job(j) {
        series_count = nullptr;
        predicted_rank = nullptr;
    }

    std::string colored(const std::string& s, bool good) const {
        if (!job.color) return s;
        return (good ? "\033[32m" : "\033[31m") + s + "\033[0m";
    }

    std::string finish(const std::string& input_text) {
        if (job.format == "json") {
            Json doc;
            doc["command"] = job.command;
            doc["input_digest"] = digest_hex(input_text);
            doc["verdicts"] = verdicts;
            doc["matrices"] = matrices;
            doc["series_count"] = series_count;
            doc["predicted_rank"] = predicted_rank;
            doc["caveats"] = caveats;
            return doc.dump(2) + "\n";
        }
        return text.str();
    }
};

Triangulation job_triangulation(const AConfig& c, const JobSpec& job) {
    if (!job.simplices) return vertex_triangulation(c.column_points());
    Triangulation t;
    t.affine_dim = c.r + c.n - 1;
    for (const auto& s : *job.simplices) {
        std::vector<std::size_t> zero_based;
        for (std::size_t idx : s) {
            if (idx < 1 || idx > c.N())
                throw ParseError("E_SIMPLEX", 0, 0,
                                 "simplex column index " + std::to_string(idx) + " out of range");
            zero_based.push_back(idx - 1);
        }
        std::sort(zero_based.begin(), zero_based.end());
        t.simplices.push_back(zero_based);
    }
    return t;
}

void run_check(ReportBuilder& rb, const AConfig& c) {
    bool homogeneous = check_homogeneous(c);
    bool hypothesis = check_hypothesis(c);
    bool star = check_property_star(c);
    NonresonanceVerdict nr = check_semi_nonresonant_sufficient(c, beta_standard(c.r, c.n));
    auto idx = lattice_index(lattice_from_generators(c.r + c.n, c.columns), c.r + c.n);

    rb.verdicts["homogeneous"] = homogeneous;
    rb.verdicts["hypothesis"] = hypothesis;
    rb.verdicts["property_star"] = star;
    rb.verdicts["semi_nonresonance"] = verdict_str(nr);
    rb.verdicts["column_lattice_index"] = idx ? Json(to_ll(*idx)) : Json(nullptr);

    rb.text << "configuration: r=" << c.r << " n=" << c.n << " N=" << c.N() << "\n";
    rb.text << "homogeneous:        " << (homogeneous ? "yes" : "no") << "\n";
    rb.text << "hypothesis:         " << (hypothesis ? "yes" : "no") << "\n";
    rb.text << "property (*):       " << (star ? "yes" : "no") << "\n";
    rb.text << "semi-nonresonance:  " << verdict_str(nr) << " (beta standard)\n";
    rb.text << "column lattice index: " << (idx ? idx->get_str() : std::string("infinite")) << "\n";
}

int run_normalize(ReportBuilder& rb, const AConfig& c) {
    NormalizeResult nr = normalize_basis(c);
    IntMatrix a = c.matrix();
    IntMatrix a_prime = nr.normalized.matrix();
    RatMatrix check = nr.r_matrix.mul(RatMatrix::from_int(a));
    bool exact = check == RatMatrix::from_int(a_prime);

    rb.verdicts["r_times_a_equals_a_prime"] = exact;
    rb.matrices["A"] = json_int_matrix(a);
    rb.matrices["B"] = json_rat_matrix(nr.b_matrix);
    rb.matrices["B_inv"] = json_int_matrix(nr.b_inverse);
    rb.matrices["R"] = json_rat_matrix(nr.r_matrix);
    rb.matrices["A_prime"] = json_int_matrix(a_prime);

    rb.text << "B:\n" << rat_matrix_text(nr.b_matrix);
    rb.text << "B^-1:\n" << nr.b_inverse.to_string();
    rb.text << "A':\n" << a_prime.to_string();
    rb.text << "R*A == A': " << (exact ? "yes" : "no") << "\n";
    return exact ? 0 : 1;
}

void run_box_ops(ReportBuilder& rb, const AConfig& c, const JobSpec& job) {
    std::vector<BoxOperator> ops = box_operators(c, job.degree_bound);
    Json list = Json::array();
    rb.text << "box operators (degree bound " << job.degree_bound << "): " << ops.size() << "\n";
    if (ops.empty()) {
        rb.text << "warning: no kernel vector fits the degree bound\n";
        rb.caveats.push_back("degree bound admits no box operator");
    }
    for (const BoxOperator& b : ops) {
        Json e;
        Json plus = Json::array(), minus = Json::array();
        for (const Int& x : b.nu_plus) plus.push_back(to_ll(x));
        for (const Int& x : b.nu_minus) minus.push_back(to_ll(x));
        e["nu_plus"] = plus;
        e["nu_minus"] = minus;
        list.push_back(e);
        rb.text << "  " << b.to_string() << "   u = " << int_vec_text(b.lattice_vector()) << "\n";
    }
    rb.verdicts["box_operators"] = list;
}

int run_series(ReportBuilder& rb, const AConfig& c, const JobSpec& job) {
    Triangulation t = job_triangulation(c, job);
    Beta beta = beta_standard(c.r, c.n);
    GkzSystem sys = make_system(c, beta, job.degree_bound);
    SeriesFamily fam = build_family(c, beta, t, job.order);

    bool all_pass = true;
    Json members = Json::array();
    rb.text << "triangulation simplices: " << t.simplices.size() << "\n";
    rb.text << "series members: " << fam.members.size() << " (order " << job.order << ")\n";
    for (const FormalSeries& s : fam.members) {
        AnnihilationVerdict v = verify_annihilation(s, sys);
        all_pass = all_pass && v.pass;
        Json m;
        Json exp = Json::array();
        for (const Rat& q : s.base_exponent) exp.push_back(format_rat(q));
        m["base_exponent"] = exp;
        m["terms"] = s.terms.size();
        m["renormalized"] = s.renormalized;
        m["annihilation"] = v.pass ? "pass" : "fail";
        members.push_back(m);
        rb.text << "  v = " << rat_vec_text(s.base_exponent) << "  terms=" << s.terms.size()
                << "  annihilation=" << rb.colored(v.pass ? "pass" : "fail", v.pass);
        if (s.renormalized) rb.text << "  (renormalized at " << int_vec_text(s.base_offset) << ")";
        if (!v.pass && v.first_failure)
            rb.text << "  first failure: " << v.first_failure->first << " at offset "
                    << int_vec_text(v.first_failure->second);
        rb.text << "\n";
    }
    std::size_t count = count_independent(fam);
    if (count < fam.members.size()) {
        rb.caveats.push_back("seed collision: independent count below member count");
        rb.text << "note: only " << count << " distinct exponent cosets among "
                << fam.members.size() << " members\n";
    }
    rb.verdicts["members"] = members;
    rb.verdicts["annihilation"] = all_pass;
    rb.series_count = count;
    rb.text << "independent series: " << count << "\n";
    return all_pass ? 0 : 1;
}

void run_rank(ReportBuilder& rb, const AConfig& c) {
    RankReport rep = predicted_rank_generic(c);
    rb.predicted_rank = to_ll(rep.predicted_rank);
    rb.verdicts["hypothesis"] = rep.hypothesis_ok;
    rb.verdicts["semi_nonresonance"] = verdict_str(rep.semi_nonresonance);
    rb.verdicts["lattice_index_used"] = to_ll(rep.lattice_index_used);
    rb.text << "predicted rank (generic point): " << rep.predicted_rank.get_str() << "\n";
    rb.text << "justification: " << rep.note << "\n";
    rb.text << "column lattice index used: " << rep.lattice_index_used.get_str() << "\n";
    rb.text << "hypothesis: " << (rep.hypothesis_ok ? "yes" : "no") << "\n";
    rb.text << "semi-nonresonance: " << verdict_str(rep.semi_nonresonance) << "\n";
    if (check_property_star(c)) {
        RankOnePoint rp = rank_one_point(c);
        Json coeff = Json::array();
        for (const Int& x : rp.coefficients) coeff.push_back(to_ll(x));
        rb.matrices["rank_one_section"] = Json::array({coeff});
        rb.verdicts["rank_one_point"] = 1;
        rb.text << "rank-one point: a = " << int_vec_text(rp.coefficients) << " (rank 1)\n";
    }
}

int run_verify_main(ReportBuilder& rb, const AConfig& c, const JobSpec& job) {
    RankReport rep = predicted_rank_generic(c);
    Triangulation t = job_triangulation(c, job);
    Beta beta = beta_standard(c.r, c.n);
    GkzSystem sys = make_system(c, beta, job.degree_bound);
    SeriesFamily fam = build_family(c, beta, t, job.order);

    bool all_pass = true;
    for (const FormalSeries& s : fam.members)
        all_pass = all_pass && verify_annihilation(s, sys).pass;
    std::size_t count = count_independent(fam);
    bool counts_match = cmp(rep.predicted_rank, Int(count)) == 0;
    bool verified = all_pass && counts_match;
    bool conditional = rep.semi_nonresonance != NonresonanceVerdict::Pass;

    rb.series_count = count;
    rb.predicted_rank = to_ll(rep.predicted_rank);
    rb.verdicts["annihilation"] = all_pass;
    rb.verdicts["counts_match"] = counts_match;
    rb.verdicts["verified"] = verified;
    rb.verdicts["semi_nonresonance"] = verdict_str(rep.semi_nonresonance);
    if (conditional)
        rb.caveats.push_back("semi-nonresonance indeterminate: rank identity is conditional");
    if (!counts_match)
        rb.caveats.push_back("series count differs from predicted rank");
    if (!all_pass) rb.caveats.push_back("some series failed annihilation");

    rb.text << "independent series (order " << job.order << "): " << count << "\n";
    rb.text << "predicted rank: " << rep.predicted_rank.get_str() << "\n";
    rb.text << "annihilation: " << (all_pass ? "pass" : "fail") << "\n";
    rb.text << "semi-nonresonance: " << verdict_str(rep.semi_nonresonance) << "\n";
    std::ostringstream verdict_line;
    verdict_line << (verified ? "verified" : "FAILED") << ": " << count << " "
                 << (counts_match ? "=" : "!=") << " " << rep.predicted_rank.get_str();
    rb.text << rb.colored(verdict_line.str(), verified);
    if (conditional) rb.text << "  [conditional: semi-nonresonance indeterminate]";
    rb.text << "\n";
    return verified ? 0 : 1;
}

}  // namespace

RunResult run(const JobSpec& job, const std::string& input_text) {
    RunResult res;
    ReportBuilder rb(job);
    try {
        ParsedInput in = parse_input(input_text);
        const AConfig& c = in.config;
        if (job.command == "check") {
            run_check(rb, c);
            res.exit_code = 0;
        } else if (job.command == "normalize") {
            res.exit_code = run_normalize(rb, c);
        } else if (job.command == "box-ops") {
            run_box_ops(rb, c, job);
            res.exit_code = 0;
        } else if (job.command == "series") {
            res.exit_code = run_series(rb, c, job);
        } else if (job.command == "rank") {
            run_rank(rb, c);
            res.exit_code = 0;
        } else if (job.command == "verify-main") {
            res.exit_code = run_verify_main(rb, c, job);
        } else {
            res.exit_code = 2;
            res.output = "unknown command '" + job.command + "'\n";
            return res;
        }
        res.output = rb.finish(input_text);
    } catch (const ParseError& e) {
        res.exit_code = 2;
        if (job.format == "json") {
            Json doc;
            doc["command"] = job.command;
            doc["error"] = {{"code", e.code}, {"line", e.line}, {"column", e.column},
                            {"message", e.what()}};
            res.output = doc.dump(2) + "\n";
        } else {
            res.output = std::string("input error: ") + e.what() + "\n";
        }
    } catch (const std::invalid_argument& e) {
        res.exit_code = 2;
        res.output = std::string("input error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        res.exit_code = 2;
        res.output = std::string("error: ") + e.what() + "\n";
    }
    return res;
}

}  // namespace gkz
