// mal — moment-angle complex cohomology tool.
//
// Computes the bigraded (Hochster) decomposition of H*(Z_K) for a simplicial
// complex K, and decides when the ring is that of a connected sum of products
// of spheres; see README.md for the formats and the exit-code contract.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "mal/mal.hpp"

namespace {

using mal::report::Json;

struct GlobalOpts {
    bool json = false;
    bool full = false;
    int threads = 0;
    bool force = false;
    bool no_timing = false;
    std::string cache_dir;

    std::unique_ptr<mal::HomologyCache> cache;

    mal::TableOptions table_options() {
        mal::TableOptions opt;
        opt.force = force;
        opt.threads = threads;
        if (!cache_dir.empty()) {
            if (!cache) cache = std::make_unique<mal::HomologyCache>(cache_dir);
            opt.cache = cache.get();
        }
        return opt;
    }
};

// exit codes (stable contract)
constexpr int kOk = 0;
constexpr int kCaseNone = 1;
constexpr int kParseError = 2;
constexpr int kCapExceeded = 3;
constexpr int kNotCertified = 4;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void finish(Json& doc, const GlobalOpts& g, const Timer& timer) {
    if (!g.no_timing) doc["timing_ms"] = timer.ms();
    if (g.cache) {
        Json c;
        c["hits"] = g.cache->hits();
        c["misses"] = g.cache->misses();
        doc["cache"] = c;
    }
}

void print_betti(const std::map<int, long>& betti,
                 const std::map<int, std::vector<mal::Int>>& torsion) {
    std::cout << "deg  rank  torsion\n";
    std::set<int> degrees;
    for (const auto& [d, r] : betti) degrees.insert(d);
    for (const auto& [d, t] : torsion) degrees.insert(d);
    for (int d : degrees) {
        long rank = betti.count(d) ? betti.at(d) : 0;
        std::cout << d << "    " << rank;
        if (torsion.count(d)) {
            std::cout << "   ";
            for (const auto& f : torsion.at(d)) std::cout << " Z/" << f.str();
        }
        std::cout << "\n";
    }
}

mal::ComplexFile load_input(const std::string& path) {
    if (auto b = mal::builtin_complex(path)) {
        mal::ComplexFile f;
        f.complex = *b;
        f.name = path;
        return f;
    }
    return mal::load_complex_file(path);
}

int run_betti(GlobalOpts& g, const std::string& path) {
    Timer timer;
    auto file = load_input(path);
    auto table = mal::BigradedTable::decompose(file.complex, g.table_options());
    if (g.json) {
        Json doc = mal::report::header("betti", file.complex, file.name);
        doc["betti"] = mal::report::betti_json(table.betti());
        doc["torsion"] = mal::report::torsion_json(table.betti_torsion());
        if (g.full) doc["bigraded"] = mal::report::bigraded_json(table);
        finish(doc, g, timer);
        std::cout << doc.dump(2) << "\n";
        return kOk;
    }
    std::cout << "H*(Z_K) for m = " << file.complex.vertex_count()
              << ", dim K = " << file.complex.dim() << "\n";
    print_betti(table.betti(), table.betti_torsion());
    if (!table.torsion_free()) std::cout << "note: table has torsion\n";
    if (g.full) {
        std::cout << "\nnonzero bidegrees (l, J):\n";
        for (const auto& [l, J] : table.nonzero_entries()) {
            auto e = table.entry(l, J);
            std::cout << "  (" << l << ", " << J.to_string() << ")  rank " << e.rank;
            for (const auto& f : e.torsion) std::cout << " Z/" << f.str();
            std::cout << "  -> degree " << l + J.size() + 1 << "\n";
        }
    }
    return kOk;
}

int run_classify(GlobalOpts& g, const std::string& path) {
    Timer timer;
    auto file = load_input(path);
    const auto& K = file.complex;
    auto table = mal::BigradedTable::decompose(K, g.table_options());
    auto cert = mal::certify_sphere(K);

    Json doc = mal::report::header("classify", K, file.name);
    int exit_code = kOk;
    if (!cert.ok()) {
        // informational mode: no classification, but the analysis is printed
        exit_code = kNotCertified;
        doc["certificate"] = mal::report::certificate_json(cert);
        doc["betti"] = mal::report::betti_json(table.betti());
        doc["torsion"] = mal::report::torsion_json(table.betti_torsion());
        doc["chordality"] = mal::report::chordality_json(
            mal::is_chordal(mal::Graph::from_skeleton(mal::skeleton(K, 1))));
        doc["missing_edges"] = mal::report::missing_edges_json(mal::missing_edge_structure(K));
        if (g.json) {
            finish(doc, g, timer);
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << "not a certified sphere: " << cert.reason << "\n";
            std::cout << "informational analysis follows\n";
            print_betti(table.betti(), table.betti_torsion());
        }
        return exit_code;
    }

    mal::ClassificationReport rep;
    switch (K.dim()) {
        case 1: rep = mal::classify_circle(K, table); break;
        case 2: rep = mal::classify_2sphere(K, table); break;
        case 3: rep = mal::classify_3sphere(K, table); break;
        case 0: {
            // S^0: Z_K is the 3-sphere; report the empty connected sum
            rep.certificate = cert;
            rep.case_label = mal::CaseLabel::Chordal;
            rep.betti = table.betti();
            rep.presentation = mal::RingPresentation{3, {}};
            rep.decomposition = rep.presentation->decomposition();
            rep.verification =
                mal::verify_presentation(table, *rep.presentation, rep.case_label);
            break;
        }
        default: rep = mal::classify_higher_sphere(K, table); break;
    }
    rep.betti = table.betti();
    exit_code = rep.case_label == mal::CaseLabel::None ? kCaseNone : kOk;

    if (g.json) {
        doc["betti"] = mal::report::betti_json(table.betti());
        doc["classification"] = mal::report::classification_json(rep);
        if (g.full) doc["bigraded"] = mal::report::bigraded_json(table);
        finish(doc, g, timer);
        std::cout << doc.dump(2) << "\n";
        return exit_code;
    }
    std::cout << "case: " << mal::to_string(rep.case_label) << "\n";
    std::cout << "certificate: "
              << (cert.verdict == mal::SphereVerdict::Certified ? "Certified"
                                                                : "CertifiedHomology")
              << " (d = " << cert.dim << ")\n";
    std::cout << "chordal 1-skeleton: " << (rep.chordality.chordal ? "yes" : "no") << "\n";
    if (rep.decomposition)
        std::cout << "predicted decomposition: " << rep.decomposition->to_string() << "\n";
    if (rep.verification)
        std::cout << "presentation verified: " << (rep.verification->pass() ? "yes" : "NO")
                  << "\n";
    for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
    print_betti(table.betti(), table.betti_torsion());
    return exit_code;
}

int run_chordal(GlobalOpts& g, const std::string& path) {
    Timer timer;
    auto file = load_input(path);
    auto res = mal::is_chordal(mal::Graph::from_skeleton(mal::skeleton(file.complex, 1)));
    if (g.json) {
        Json doc = mal::report::header("chordal", file.complex, file.name);
        doc["chordality"] = mal::report::chordality_json(res);
        finish(doc, g, timer);
        std::cout << doc.dump(2) << "\n";
    } else if (res.chordal) {
        std::cout << "chordal; elimination order:";
        for (int v : res.order->order) std::cout << " " << v;
        std::cout << "\n";
    } else {
        std::cout << "not chordal; chordless cycle:";
        for (int v : *res.witness) std::cout << " " << v;
        std::cout << "\n";
    }
    return res.chordal ? kOk : kCaseNone;
}

int run_missing(GlobalOpts& g, const std::string& path) {
    Timer timer;
    auto file = load_input(path);
    const auto& K = file.complex;
    auto rep = mal::missing_edge_structure(K);
    if (g.json) {
        Json doc = mal::report::header("missing", K, file.name);
        doc["missing_edges"] = mal::report::missing_edges_json(rep);
        if (g.full) {
            Json all;
            for (int n = 0; n <= K.dim() + 1; ++n) {
                Json arr = Json::array();
                for (const auto& mf : mal::missing_faces(K, n)) arr.push_back(mf.vertices.labels());
                if (!arr.empty()) all[std::to_string(n)] = arr;
            }
            doc["missing_faces_by_dim"] = all;
        }
        finish(doc, g, timer);
        std::cout << doc.dump(2) << "\n";
        return kOk;
    }
    std::cout << rep.missing_edges.size() << " missing edges:";
    for (const auto& e : rep.missing_edges) std::cout << " " << e.to_string();
    std::cout << "\npairwise disjoint: " << (rep.pairwise_disjoint ? "yes" : "no") << "\n";
    std::cout << "all pairs span chordless 4-cycles: "
              << (rep.all_pairs_chordless_4cycles ? "yes" : "no") << "\n";
    std::cout << "join condition: " << (rep.join_condition ? "yes" : "no") << "\n";
    if (g.full)
        for (int n = 0; n <= K.dim() + 1; ++n) {
            auto mfs = mal::missing_faces(K, n);
            if (mfs.empty()) continue;
            std::cout << "missing faces of dim " << n << ":";
            for (const auto& mf : mfs) std::cout << " " << mf.vertices.to_string();
            std::cout << "\n";
        }
    return kOk;
}

int run_certify(GlobalOpts& g, const std::string& path) {
    Timer timer;
    auto file = load_input(path);
    auto cert = mal::certify_sphere(file.complex);
    if (g.json) {
        Json doc = mal::report::header("certify", file.complex, file.name);
        doc["certificate"] = mal::report::certificate_json(cert);
        finish(doc, g, timer);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "dim " << cert.dim << ": "
                  << (cert.verdict == mal::SphereVerdict::Certified ? "Certified"
                      : cert.verdict == mal::SphereVerdict::CertifiedHomology
                          ? "CertifiedHomology"
                          : "Failed")
                  << "\n";
        if (!cert.reason.empty()) std::cout << "reason: " << cert.reason << "\n";
    }
    return cert.ok() ? kOk : kNotCertified;
}

int run_predict(GlobalOpts& g, int m, int n) {
    Timer timer;
    auto dec = mal::mcgavran_decomposition(m, n);
    auto betti = mal::decomposition_to_betti(dec, m + n);
    if (g.json) {
        Json doc;
        doc["schema"] = mal::kReportSchema;
        doc["tool"] = mal::kToolName;
        doc["version"] = mal::kVersion;
        doc["command"] = "predict";
        doc["m"] = m;
        doc["n"] = n;
        doc["decomposition"] = mal::report::decomposition_json(dec);
        doc["betti"] = mal::report::betti_json(betti);
        finish(doc, g, timer);
        std::cout << doc.dump(2) << "\n";
        return kOk;
    }
    std::cout << "Z_P for a dual stacked " << n << "-polytope with " << m
              << " facets:\n  " << dec.to_string() << "\n";
    std::map<int, std::vector<mal::Int>> no_torsion;
    print_betti(betti, no_torsion);
    return kOk;
}

int run_golod_weak(GlobalOpts& g, const std::string& path) {
    Timer timer;
    auto file = load_input(path);
    auto res = mal::weak_min_non_golod(file.complex, g.table_options());
    if (g.json) {
        Json doc = mal::report::header("golod-weak", file.complex, file.name);
        doc["self_products_trivial"] = res.self_products_trivial;
        doc["deletions_trivial"] = res.deletions_trivial;
        doc["failing_deletions"] = res.failing_deletions;
        doc["weak_min_non_golod"] = res.weak_min_non_golod();
        doc["caveat"] = "products only; Massey products are not checked";
        finish(doc, g, timer);
        std::cout << doc.dump(2) << "\n";
        return kOk;
    }
    std::cout << "products in H*(Z_K) trivial: " << (res.self_products_trivial ? "yes" : "no")
              << "\n";
    std::cout << "all vertex deletions product-trivial: "
              << (res.deletions_trivial ? "yes" : "no");
    if (!res.failing_deletions.empty()) {
        std::cout << " (failing:";
        for (int v : res.failing_deletions) std::cout << " " << v;
        std::cout << ")";
    }
    std::cout << "\nweakly minimally non-Golod: " << (res.weak_min_non_golod() ? "yes" : "no")
              << "  [products only; Massey products unchecked]\n";
    return kOk;
}

int run_generate(GlobalOpts& g, const std::string& kind, const std::vector<std::string>& params,
                 std::uint64_t seed, const std::string& out_path, const std::string& format,
                 const std::string& name) {
    mal::SimplicialComplex K;
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw mal::ParseError("generate " + kind + ": expected " + std::to_string(n) +
                                  " parameter(s)");
    };
    if (kind == "stacked") {
        need(2);
        K = mal::generate_stacked_sphere(std::stoi(params[0]), std::stoi(params[1]), seed);
    } else if (kind == "polygon") {
        need(1);
        K = mal::builtin::polygon(std::stoi(params[0]));
    } else if (kind == "cross-polytope") {
        need(1);
        K = mal::builtin::cross_polytope(std::stoi(params[0]));
    } else if (kind == "join") {
        need(2);
        K = mal::join(load_input(params[0]).complex, load_input(params[1]).complex);
    } else if (kind == "builtin") {
        need(1);
        auto b = mal::builtin_complex(params[0]);
        if (!b) {
            std::cerr << "unknown builtin '" << params[0] << "'; available:";
            for (const auto& n : mal::builtin_names()) std::cerr << " " << n;
            std::cerr << "\n";
            return kParseError;
        }
        K = *b;
    } else {
        std::cerr << "unknown kind '" << kind
                  << "' (expected stacked | polygon | cross-polytope | join | builtin)\n";
        return kParseError;
    }
    std::string payload = format == "json" ? mal::write_complex_json(K, name)
                                           : mal::write_complex_text(K);
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write '" << out_path << "'\n";
            return kParseError;
        }
        out << payload;
    }
    return kOk;
}

int run_cache(GlobalOpts& g, const std::string& sub) {
    if (g.cache_dir.empty()) {
        std::cerr << "no cache directory configured (use --cache DIR or MAL_CACHE_DIR)\n";
        return kParseError;
    }
    mal::HomologyCache cache(g.cache_dir);
    if (sub == "stats") {
        auto s = cache.stats();
        if (g.json) {
            Json doc;
            doc["schema"] = mal::kReportSchema;
            doc["command"] = "cache stats";
            doc["directory"] = g.cache_dir;
            doc["files"] = s.files;
            doc["bytes"] = s.bytes;
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << s.files << " records, " << s.bytes << " bytes in " << g.cache_dir
                      << "\n";
        }
        return kOk;
    }
    if (sub == "verify") {
        auto v = cache.verify();
        if (g.json) {
            Json doc;
            doc["schema"] = mal::kReportSchema;
            doc["command"] = "cache verify";
            doc["checked"] = v.checked;
            doc["corrupt"] = v.corrupt;
            doc["evicted"] = v.evicted;
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << "checked " << v.checked << ", corrupt " << v.corrupt << "\n";
            for (const auto& f : v.evicted) std::cout << "evicted " << f << "\n";
        }
        return kOk;
    }
    if (sub == "clear") {
        long n = cache.clear();
        std::cout << "removed " << n << " records\n";
        return kOk;
    }
    std::cerr << "unknown cache subcommand '" << sub << "'\n";
    return kParseError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment-angle complex cohomology tool"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("MAL_CACHE_DIR")) g.cache_dir = env;
    app.add_flag("--json", g.json, "emit a JSON report document");
    app.add_flag("--full", g.full, "include the full bigraded table / face lists");
    app.add_option("--threads", g.threads, "worker pool size for decompose (0 = auto)");
    app.add_flag("--force", g.force, "override the subset cap");
    app.add_flag("--no-timing", g.no_timing, "omit timing fields from reports");
    app.add_option("--cache", g.cache_dir, "persistent homology cache directory");

    std::string path, kind, out_path = "-", format = "text", cname, cache_sub;
    std::vector<std::string> params;
    std::uint64_t seed = 1;
    int pm = 0, pn = 0;

    auto* betti = app.add_subcommand("betti", "aggregated Betti numbers of Z_K");
    betti->add_option("file", path, "complex file or builtin name")->required();
    auto* classify = app.add_subcommand("classify", "connected-sum classification");
    classify->add_option("file", path, "complex file or builtin name")->required();
    auto* chordal = app.add_subcommand("chordal", "chordality of the 1-skeleton");
    chordal->add_option("file", path, "complex file or builtin name")->required();
    auto* missing = app.add_subcommand("missing", "missing-edge structure");
    missing->add_option("file", path, "complex file or builtin name")->required();
    auto* certify = app.add_subcommand("certify", "sphere certificate");
    certify->add_option("file", path, "complex file or builtin name")->required();
    auto* generate = app.add_subcommand("generate", "write a complex file");
    generate->add_option("kind", kind, "stacked | polygon | cross-polytope | join | builtin")
        ->required();
    generate->add_option("params", params, "kind parameters");
    generate->add_option("--seed", seed, "PRNG seed for stacked");
    generate->add_option("-o,--out", out_path, "output path (default stdout)");
    generate->add_option("--format", format, "text | json");
    generate->add_option("--name", cname, "name field for json output");
    auto* predict = app.add_subcommand("predict", "connected-sum prediction from (m, n)");
    predict->add_option("m", pm, "facet count")->required();
    predict->add_option("n", pn, "polytope dimension")->required();
    auto* golod = app.add_subcommand("golod-weak", "product-triviality Golod checks");
    golod->add_option("file", path, "complex file or builtin name")->required();
    auto* cachecmd = app.add_subcommand("cache", "cache administration");
    cachecmd->add_option("action", cache_sub, "stats | verify | clear")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    CLI11_PARSE(app, argc, argv);

    try {
        if (betti->parsed()) return run_betti(g, path);
        if (classify->parsed()) return run_classify(g, path);
        if (chordal->parsed()) return run_chordal(g, path);
        if (missing->parsed()) return run_missing(g, path);
        if (certify->parsed()) return run_certify(g, path);
        if (generate->parsed())
            return run_generate(g, kind, params, seed, out_path, format, cname);
        if (predict->parsed()) return run_predict(g, pm, pn);
        if (golod->parsed()) return run_golod_weak(g, path);
        if (cachecmd->parsed()) return run_cache(g, cache_sub);
    } catch (const mal::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const mal::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }
    return kOk;
}
