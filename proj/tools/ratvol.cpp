// ratvol: rational measures of rational polyhedra from the command line.
//
// Every command prints one JSON report on stdout (or a text rendering with
// --pretty). Exit status: 0 success, 1 verification failure, 2 input error.

#include "ratvol/fan.hpp"
#include "ratvol/io.hpp"
#include "ratvol/measure.hpp"
#include "ratvol/transforms.hpp"
#include "ratvol/verify.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

using namespace ratvol;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

/// Bad input that is reported with exit status 2.
struct InputError : std::runtime_error {
    InputError(const std::string& message, std::string file = "", std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(message), file(std::move(file)), line(line), column(column) {}
    std::string file;
    std::size_t line;
    std::size_t column;
};

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int size = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), digest, &size, EVP_sha256(), nullptr))
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < size; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

struct Input {
    std::string path;
    std::string digest;
    Polyhedron polyhedron;
};

Input load(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot read file", path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return {path, sha256_hex(text), io::parse_polyhedron(text)};
    } catch (const io::ParseError& e) {
        throw InputError(e.message(), path, e.line(), e.column());
    } catch (const GeometryError& e) {
        throw InputError(e.what(), path);
    }
}

Json digest_of(const std::vector<Input>& inputs) {
    Json files = Json::array();
    for (const auto& in : inputs) files.push_back(Json{{"path", in.path}, {"sha256", in.digest}});
    return files;
}

Json rats(const std::vector<Rat>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(to_string(r));
    return out;
}

/// Integers separated by commas and/or whitespace, possibly spread over several arguments.
std::vector<Int> parse_integers(const std::vector<std::string>& args, const std::string& flag) {
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    for (char& c : joined)
        if (c == ',') c = ' ';
    std::istringstream in(joined);
    std::vector<Int> out;
    for (std::string token; in >> token;) {
        try {
            out.push_back(io::parse_integer(token));
        } catch (const GeometryError&) {
            throw InputError(flag + ": \"" + token + "\" is not an integer");
        }
    }
    return out;
}

// Commands --------------------------------------------------------------------------

struct Outcome {
    Json result;
    int status = kOk;
};

Outcome measure(const Input& in, std::optional<long> dim) {
    const Polyhedron& p = in.polyhedron;
    if (dim && *dim < 0) throw InputError("--dim must be nonnegative");
    if (dim) {
        const Rat value = static_cast<std::size_t>(*dim) > p.ambient_dim() ? Rat(0)
                                                                          : lambda(p, static_cast<std::size_t>(*dim)).value;
        return {Json{{"ambient_dim", p.ambient_dim()}, {"d", *dim}, {"lambda", to_string(value)}}};
    }
    return {Json{{"ambient_dim", p.ambient_dim()}, {"lambda", rats(lambda_vector(p))}}};
}

Outcome triangulate(const Input& in, bool regular) {
    const Polyhedron& p = in.polyhedron;
    Json result;
    if (!regular) {
        result = io::complex_to_json(p.canonical());
    } else if (p.empty()) {
        result = io::complex_to_json(Complex(p.ambient_dim()));
        result["stellar_steps"] = 0;
    } else {
        DesingularizationLog log;
        result = io::complex_to_json(unlift(desingularize(lift(p.canonical()), &log)));
        result["stellar_steps"] = log.steps.size();
    }
    result["regular_requested"] = regular;
    return {result};
}

/// Built-in corpus for verify runs without files: the reference polyhedra of the measure examples.
std::vector<Polyhedron> default_corpus() {
    const char* files[] = {
        R"({"dim": 1, "simplexes": [[["0"], ["1"]]]})",
        R"({"dim": 1, "simplexes": [[["1/5"]]]})",
        R"({"dim": 1, "simplexes": [[["1/5"], ["2/5"]]]})",
        R"({"dim": 1, "simplexes": [[["0"], ["2"]]]})",
        R"({"dim": 1, "simplexes": [[["0"], ["1"]], [["1/2"], ["3/2"]]]})",
        R"({"dim": 2, "simplexes": [[["0", "0"], ["1", "0"], ["0", "1"]]]})",
        R"({"dim": 2, "simplexes": [[["0", "0"], ["1", "0"], ["1", "1"]], [["0", "0"], ["0", "1"], ["1", "1"]]]})",
        R"({"dim": 2, "simplexes": [[["0", "0"], ["2", "0"], ["0", "3/5"]]]})",
        R"({"dim": 3, "simplexes": [[["0", "0", "0"], ["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]]})",
    };
    std::vector<Polyhedron> out;
    for (const char* f : files) out.push_back(io::parse_polyhedron(f));
    return out;
}

struct VerifyArgs {
    std::uint64_t seed = 42;
    std::size_t trials = 200;
    std::size_t chains = 3;
    std::vector<std::string> properties;
    bool corrupt_lambda = false;
};

Outcome run_verify(const std::vector<Input>& inputs, const VerifyArgs& args, Json& timing) {
    verify::Options o;
    o.seed = args.seed;
    o.trials = args.trials;
    o.chains = args.chains;
    o.only = args.properties;
    if (args.corrupt_lambda) o.lambda = verify::corrupted_lambda();
    if (inputs.empty()) {
        o.corpus = default_corpus();
    } else {
        for (const auto& in : inputs) o.corpus.push_back(in.polyhedron);
    }
    verify::Report r;
    try {
        r = verify::run(o);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    Json per = Json::object();
    for (const auto& p : r.properties) per[p.name] = p.seconds;
    timing["properties"] = per;
    Json result = r.to_json();
    result["corpus"] = inputs.empty() ? "default" : "files";
    result["corpus_size"] = o.corpus.size();
    if (args.corrupt_lambda) result["corrupted_lambda"] = true;
    return {result, r.passed() ? kOk : kVerificationFailed};
}

Outcome transform(const Input& in, const std::vector<std::string>& matrix_args,
                  const std::vector<std::string>& shift_args) {
    const Polyhedron& p = in.polyhedron;
    const std::size_t n = p.ambient_dim();
    const std::vector<Int> entries = parse_integers(matrix_args, "--matrix");
    if (entries.size() != n * n)
        throw InputError("--matrix needs " + std::to_string(n * n) + " integers for dimension " + std::to_string(n) +
                         ", got " + std::to_string(entries.size()));
    std::vector<Int> shift = parse_integers(shift_args, "--shift");
    if (shift_args.empty()) shift.assign(n, Int(0));
    if (shift.size() != n)
        throw InputError("--shift needs " + std::to_string(n) + " integers, got " + std::to_string(shift.size()));

    IntMat a(n, n);
    IntVec t(n);
    for (std::size_t r = 0; r < n; ++r) {
        t[r] = shift[r];
        for (std::size_t c = 0; c < n; ++c) a(r, c) = entries[r * n + c];
    }
    std::optional<GnMap> g;
    try {
        g.emplace(a, t);
    } catch (const GeometryError& e) {
        throw InputError(e.what());
    }
    const Polyhedron image = apply_polyhedron(*g, p);
    const auto before = lambda_vector(p), after = lambda_vector(image);
    Json m = Json::array();
    for (std::size_t r = 0; r < n; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < n; ++c) row.push_back(to_string(a(r, c)));
        m.push_back(row);
    }
    Json s = Json::array();
    for (std::size_t i = 0; i < n; ++i) s.push_back(to_string(t[i]));
    Json result{{"matrix", m},
                {"shift", s},
                {"image", io::polyhedron_to_json(image)},
                {"lambda", rats(before)},
                {"lambda_image", rats(after)},
                {"lambda_preserved", before == after}};
    return {result, before == after ? kOk : kVerificationFailed};
}

// Rendering -------------------------------------------------------------------------

std::string point_text(const Json& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get<std::string>();
    return s + ")";
}

std::string simplex_text(const Json& s) {
    std::string out = "conv(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + point_text(s[i]);
    return out + ")";
}

void render_pretty(std::ostream& out, const Json& report) {
    const std::string command = report["command"]["name"];
    out << "ratvol " << command;
    for (const auto& f : report["input"]) out << "  " << f["path"].get<std::string>() << " [sha256 "
                                              << f["sha256"].get<std::string>().substr(0, 12) << "]";
    out << "\n";
    if (report["status"] == "error") {
        const Json& e = report["error"];
        out << "error: ";
        if (e.contains("file")) out << e["file"].get<std::string>() << ":";
        if (e.contains("line")) out << e["line"] << ":" << e["column"] << ": ";
        out << e["message"].get<std::string>() << "\n";
        return;
    }
    const Json& r = report["result"];
    if (command == "measure") {
        if (r.contains("d")) {
            out << "λ_" << r["d"] << " = " << r["lambda"].get<std::string>() << "\n";
        } else {
            for (std::size_t d = 0; d < r["lambda"].size(); ++d)
                out << "λ_" << d << " = " << r["lambda"][d].get<std::string>() << "\n";
        }
    } else if (command == "triangulate") {
        out << r["simplexes"].size() << " maximal simplexes";
        if (r.contains("stellar_steps")) out << ", " << r["stellar_steps"] << " stellar steps";
        out << "\n";
        for (std::size_t i = 0; i < r["simplexes"].size(); ++i) {
            out << "  " << simplex_text(r["simplexes"][i]);
            if (r["regular"][i].get<bool>()) out << "  den " << r["denominators"][i].get<std::string>() << "  regular";
            else out << "  not regular";
            out << "\n";
        }
    } else if (command == "verify") {
        out << "seed " << r["seed"].get<std::string>() << ", " << r["trials"] << " trials, corpus "
            << r["corpus"].get<std::string>() << " (" << r["corpus_size"] << ")\n";
        for (const auto& p : r["properties"]) {
            out << "  " << std::left << std::setw(28) << p["name"].get<std::string>() << std::setw(9)
                << p["status"].get<std::string>() << p["instances"] << " instances, " << p["failures"]
                << " failures\n";
            if (p.contains("counterexample")) out << "    counterexample: " << p["counterexample"].dump() << "\n";
        }
        out << "overall: " << r["status"].get<std::string>() << " (" << r["properties_executed"]
            << " properties executed)\n";
    } else if (command == "transform") {
        out << "image:\n";
        for (const auto& s : r["image"]["simplexes"]) out << "  " << simplex_text(s) << "\n";
        out << "λ = " << point_text(r["lambda"]) << "\n";
        out << "λ preserved: " << (r["lambda_preserved"].get<bool>() ? "true" : "false") << "\n";
    }
    out << "time " << std::fixed << std::setprecision(3) << report["timing"]["seconds"].get<double>() << " s\n";
}

Json argv_echo(int argc, char** argv) {
    Json out = Json::array();
    for (int i = 1; i < argc; ++i) out.push_back(argv[i]);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational measures of rational polyhedra"};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false;
    app.add_flag("--pretty", pretty, "Human-readable output instead of JSON");

    std::string file;
    std::optional<long> dim;
    auto* measure_cmd = app.add_subcommand("measure", "λ_d(P), or the full vector λ_0..λ_n");
    measure_cmd->add_option("file", file, "PolyhedronFile (- for stdin)")->required();
    measure_cmd->add_option("--dim", dim, "Dimension d");

    bool regular = false;
    auto* triangulate_cmd = app.add_subcommand("triangulate", "Triangulation with denominators and regularity");
    triangulate_cmd->add_option("file", file, "PolyhedronFile (- for stdin)")->required();
    triangulate_cmd->add_flag("--regular", regular, "Desingularize to a regular triangulation");

    std::vector<std::string> files;
    VerifyArgs vargs;
    auto* verify_cmd = app.add_subcommand("verify", "Property suite for the measure axioms");
    verify_cmd->add_option("files", files, "Extra PolyhedronFiles; without any, a built-in corpus");
    verify_cmd->add_option("--seed", vargs.seed, "Seed for all random instances");
    verify_cmd->add_option("--trials", vargs.trials, "Random instances per property");
    verify_cmd->add_option("--chains", vargs.chains, "Farey refinement chains per triangulation-independence instance");
    verify_cmd->add_option("--property", vargs.properties, "Run only these properties");
    verify_cmd->add_flag("--corrupt-lambda", vargs.corrupt_lambda, "Negative control")->group("");

    std::vector<std::string> matrix, shift;
    auto* transform_cmd = app.add_subcommand("transform", "Apply x -> Ax + t and check that λ is preserved");
    transform_cmd->add_option("file", file, "PolyhedronFile (- for stdin)")->required();
    transform_cmd->add_option("--matrix", matrix, "Row-major integer entries of A")->required();
    transform_cmd->add_option("--shift", shift, "Integer entries of t (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ratvol: " << e.what() << "\n";
        const auto subs = app.get_subcommands();
        const Json report{{"command", Json{{"name", subs.empty() ? Json() : Json(subs.front()->get_name())},
                                           {"argv", argv_echo(argc, argv)}}},
                          {"input", Json::array()},
                          {"status", "error"},
                          {"error", Json{{"message", e.what()}}}};
        if (pretty) std::cout << "error: " << e.what() << "\n";
        else std::cout << report.dump(2) << "\n";
        return kInputError;
    }

    const CLI::App* sub = app.get_subcommands().front();
    Json report{{"command", Json{{"name", sub->get_name()}, {"argv", argv_echo(argc, argv)}}}};

    const auto start = std::chrono::steady_clock::now();
    int status = kOk;
    Json timing = Json::object();
    try {
        std::vector<Input> inputs;
        if (sub == verify_cmd) {
            for (const auto& f : files) inputs.push_back(load(f));
        } else {
            inputs.push_back(load(file));
        }
        report["input"] = digest_of(inputs);
        Outcome outcome;
        if (sub == measure_cmd) outcome = measure(inputs.front(), dim);
        else if (sub == triangulate_cmd) outcome = triangulate(inputs.front(), regular);
        else if (sub == verify_cmd) outcome = run_verify(inputs, vargs, timing);
        else outcome = transform(inputs.front(), matrix, shift);
        status = outcome.status;
        report["status"] = status != kOk ? "fail" : outcome.result.value("status", "") == "vacuous" ? "vacuous" : "ok";
        report["result"] = std::move(outcome.result);
    } catch (const InputError& e) {
        status = kInputError;
        if (!report.contains("input")) report["input"] = Json::array();
        report["status"] = "error";
        Json err{{"message", e.what()}};
        if (!e.file.empty()) err["file"] = e.file;
        if (e.line) {
            err["line"] = e.line;
            err["column"] = e.column;
        }
        report["error"] = err;
        std::cerr << "ratvol: " << (e.file.empty() ? "" : e.file + ":")
                  << (e.line ? std::to_string(e.line) + ":" + std::to_string(e.column) + ": " : "") << e.what()
                  << "\n";
    }
    timing["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["timing"] = timing;

    if (pretty) render_pretty(std::cout, report);
    else std::cout << report.dump(2) << "\n";
    return status;
}
