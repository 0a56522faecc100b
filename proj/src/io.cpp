#include "brkit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace brkit {

namespace {

using nlohmann::json;

std::string next_content_line(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
            return line;
    }
    throw IoError("unexpected end of file");
}

void write_block_rows(const Mat& M, std::ostream& os) {
    for (int i = 0; i < M.rows(); ++i) {
        for (int j = 0; j < M.cols(); ++j) {
            if (j)
                os << ' ';
            os << static_cast<int>(M(i, j));
        }
        os << '\n';
    }
}

Mat read_block_rows(std::istream& is, const Field& F, int rows, int cols) {
    Mat M(F, rows, cols);
    for (int i = 0; i < rows; ++i) {
        std::string line = next_content_line(is);
        std::istringstream ls(line);
        for (int j = 0; j < cols; ++j) {
            int v;
            if (!(ls >> v))
                throw IoError("matrix row is too short");
            if (v < 0 || v >= F.q())
                throw IoError("entry out of range for the field");
            M.set(i, j, static_cast<elem>(v));
        }
        int extra;
        if (ls >> extra)
            throw IoError("matrix row is too long");
    }
    return M;
}

} // namespace

void write_space_text(const MatSpace& S, std::ostream& os) {
    os << "%matspace v1\n";
    os << "field " << S.field().q() << '\n';
    os << "kind " << kind_name(S.kind()) << '\n';
    if (S.kind() == SpaceKind::rect)
        os << "size " << S.n() << ' ' << S.p() << '\n';
    else
        os << "size " << S.n() << '\n';
    os << "dim " << S.dim() << '\n';
    for (int k = 0; k < S.dim(); ++k) {
        if (k)
            os << '\n';
        write_block_rows(S.basis_mat(k), os);
    }
}

MatSpace read_space_text(std::istream& is) {
    std::string line = next_content_line(is);
    if (line.rfind("%matspace v1", 0) != 0)
        throw IoError("missing %matspace v1 header");
    int q = 0, n = 0, p = -1, d = 0;
    std::string kind_str;
    {
        std::istringstream ls(next_content_line(is));
        std::string tag;
        ls >> tag >> q;
        if (tag != "field")
            throw IoError("expected field line");
    }
    {
        std::istringstream ls(next_content_line(is));
        std::string tag;
        ls >> tag >> kind_str;
        if (tag != "kind")
            throw IoError("expected kind line");
    }
    {
        std::istringstream ls(next_content_line(is));
        std::string tag;
        ls >> tag >> n;
        if (tag != "size")
            throw IoError("expected size line");
        if (!(ls >> p))
            p = n;
    }
    {
        std::istringstream ls(next_content_line(is));
        std::string tag;
        ls >> tag >> d;
        if (tag != "dim")
            throw IoError("expected dim line");
    }
    const Field& F = Field::make(q);
    SpaceKind kind = kind_from_name(kind_str);
    std::vector<Mat> gens;
    for (int k = 0; k < d; ++k)
        gens.push_back(read_block_rows(is, F, n, p));
    return MatSpace::make(F, kind, n, p, gens);
}

std::string space_to_json(const MatSpace& S) {
    json j;
    j["format"] = "matspace";
    j["version"] = 1;
    j["field"] = S.field().q();
    j["kind"] = kind_name(S.kind());
    if (S.kind() == SpaceKind::rect)
        j["size"] = {S.n(), S.p()};
    else
        j["size"] = {S.n()};
    j["dim"] = S.dim();
    json basis = json::array();
    for (int k = 0; k < S.dim(); ++k) {
        Mat M = S.basis_mat(k);
        json rows = json::array();
        for (int i = 0; i < M.rows(); ++i) {
            json row = json::array();
            for (int j2 = 0; j2 < M.cols(); ++j2)
                row.push_back(static_cast<int>(M(i, j2)));
            rows.push_back(row);
        }
        basis.push_back(rows);
    }
    j["basis"] = basis;
    return j.dump(2) + "\n";
}

MatSpace space_from_json(const std::string& text) {
    json j = json::parse(text);
    const Field& F = Field::make(j.at("field").get<int>());
    SpaceKind kind = kind_from_name(j.at("kind").get<std::string>());
    auto size = j.at("size");
    int n = size.at(0).get<int>();
    int p = size.size() > 1 ? size.at(1).get<int>() : n;
    std::vector<Mat> gens;
    for (const auto& rows : j.at("basis")) {
        std::vector<Vec> rr;
        for (const auto& row : rows) {
            Vec v;
            for (const auto& x : row) {
                int val = x.get<int>();
                if (val < 0 || val >= F.q())
                    throw IoError("entry out of range for the field");
                v.push_back(static_cast<elem>(val));
            }
            rr.push_back(v);
        }
        gens.push_back(Mat::from_rows(F, rr));
    }
    return MatSpace::make(F, kind, n, p, gens);
}

namespace {
bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() &&
           s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}
} // namespace

void write_space_file(const MatSpace& S, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    if (has_suffix(path, ".json"))
        os << space_to_json(S);
    else
        write_space_text(S, os);
}

MatSpace read_space_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    std::string text = buf.str();
    size_t pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{')
        return space_from_json(text);
    std::istringstream ss(text);
    return read_space_text(ss);
}

void write_cert_text(const CongruenceCert& cert, const Field& F,
                     std::ostream& os) {
    os << "%matspace v1\n";
    os << "field " << F.q() << '\n';
    os << "kind rect\n";
    os << "size " << cert.P.rows() << ' ' << cert.P.cols() << '\n';
    os << "dim 1\n";
    os << "model " << kind_name(cert.model.kind) << ' ' << cert.model.n << ' '
       << cert.model.s << ' ' << cert.model.t << '\n';
    write_block_rows(cert.P, os);
}

CongruenceCert read_cert_text(std::istream& is) {
    std::string line = next_content_line(is);
    if (line.rfind("%matspace v1", 0) != 0)
        throw IoError("missing %matspace v1 header");
    int q = 0, n = 0, p = 0;
    {
        std::istringstream ls(next_content_line(is));
        std::string tag;
        ls >> tag >> q;
        if (tag != "field")
            throw IoError("expected field line");
    }
    {
        std::istringstream ls(next_content_line(is));
        std::string tag, kind_str;
        ls >> tag >> kind_str;
        if (tag != "kind" || kind_str != "rect")
            throw IoError("certificate matrix must be rect");
    }
    {
        std::istringstream ls(next_content_line(is));
        std::string tag;
        ls >> tag >> n >> p;
        if (tag != "size")
            throw IoError("expected size line");
    }
    {
        std::istringstream ls(next_content_line(is));
        std::string tag;
        int d;
        ls >> tag >> d;
        if (tag != "dim" || d != 1)
            throw IoError("expected dim 1");
    }
    CongruenceCert cert;
    {
        std::istringstream ls(next_content_line(is));
        std::string tag, kind_str;
        ls >> tag >> kind_str;
        if (tag != "model")
            throw IoError("expected model line");
        cert.model.kind = kind_from_name(kind_str);
        ls >> cert.model.n >> cert.model.s >> cert.model.t;
    }
    const Field& F = Field::make(q);
    cert.P = read_block_rows(is, F, n, p);
    return cert;
}

void write_cert_file(const CongruenceCert& cert, const Field& F,
                     const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    write_cert_text(cert, F, os);
}

CongruenceCert read_cert_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open '" + path + "'");
    return read_cert_text(is);
}

std::string outcome_to_json(const RecognitionOutcome& out) {
    json j;
    switch (out.verdict) {
    case Verdict::Certified: j["verdict"] = "certified"; break;
    case Verdict::NotContained: j["verdict"] = "not_contained"; break;
    case Verdict::Stalled: j["verdict"] = "stalled"; break;
    }
    if (out.cert) {
        json model;
        model["kind"] = kind_name(out.cert->model.kind);
        model["n"] = out.cert->model.n;
        model["s"] = out.cert->model.s;
        model["t"] = out.cert->model.t;
        j["model"] = model;
        json P = json::array();
        for (int i = 0; i < out.cert->P.rows(); ++i) {
            json row = json::array();
            for (int c = 0; c < out.cert->P.cols(); ++c)
                row.push_back(static_cast<int>(out.cert->P(i, c)));
            P.push_back(row);
        }
        j["P"] = P;
    }
    if (!out.not_contained.empty()) {
        json models = json::array();
        for (const auto& m : out.not_contained) {
            json model;
            model["kind"] = kind_name(m.kind);
            model["n"] = m.n;
            model["s"] = m.s;
            model["t"] = m.t;
            models.push_back(model);
        }
        j["not_contained"] = models;
    }
    if (!out.stall_reason.empty())
        j["stall_reason"] = out.stall_reason;
    j["trace"] = out.trace;
    j["stats"] = {{"hyperplanes_scanned", out.stats.hyperplanes_scanned},
                  {"flags_tested", out.stats.flags_tested}};
    return j.dump(2) + "\n";
}

} // namespace brkit
