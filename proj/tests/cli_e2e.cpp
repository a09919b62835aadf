// End-to-end checks of the CLI: exit codes, output provenance headers,
// and byte-identical reruns in deterministic mode. Invoked by CTest with
// the CLI binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

#define EXPECT(cond)                                                               \
    do {                                                                           \
        if (!(cond)) {                                                             \
            ++g_failures;                                                          \
            std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << ": " << #cond   \
                      << "\n";                                                     \
        }                                                                          \
    } while (0)

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream(p, std::ios::binary) << content;
}

int run(const std::string& cmd) {
    int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

std::string make_speech(std::mt19937_64& rng, const std::vector<std::string>& pool,
                        const std::vector<std::string>& filler, int sentences) {
    std::ostringstream text;
    for (int s = 0; s < sentences; ++s) {
        text << "The assembly";
        for (int w = 0; w < 9; ++w) {
            const auto& src = (w % 3 == 0) ? filler : pool;
            text << ' ' << src[rng() % src.size()];
        }
        text << ". ";
    }
    return text.str();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_e2e <path-to-semdex>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path root =
        fs::temp_directory_path() / ("semdex_e2e_" + std::to_string(std::random_device{}()));
    fs::create_directories(root / "corpus");
    fs::create_directories(root / "out");

    const std::vector<std::string> cluster_a = {
        "health",    "sanitation", "education", "school",   "hospital",
        "medicine",  "doctor",     "teacher",   "children", "welfare",
        "literacy",  "vaccine",    "nutrition", "learning", "development"};
    const std::vector<std::string> cluster_b = {
        "nuclear",  "weapon",   "terror",   "islamic",  "war",
        "security", "army",     "missile",  "conflict", "defense",
        "threat",   "military", "deterrent", "arms",    "strategic"};
    const std::vector<std::string> filler = {"nations", "peoples", "world",
                                             "peace",   "united",  "global"};

    const std::vector<std::string> group_a = {"USA", "FRA", "GBR", "DEU"};
    const std::vector<std::string> group_b = {"RUS", "CHN", "IND", "BRA"};

    std::mt19937_64 rng(2718);
    std::ostringstream votes;
    votes << "year,country_code,agreement\n";
    for (int year = 1994; year <= 1998; ++year) {
        int session = year - 1969;
        for (const auto& cc : group_a)
            spit(root / "corpus" /
                     (cc + "_" + std::to_string(session) + "_" + std::to_string(year) + ".txt"),
                 make_speech(rng, cluster_a, filler, 12));
        for (const auto& cc : group_b)
            spit(root / "corpus" /
                     (cc + "_" + std::to_string(session) + "_" + std::to_string(year) + ".txt"),
                 make_speech(rng, cluster_b, filler, 12));
        for (const auto& cc : {"FRA", "GBR", "DEU", "RUS", "CHN", "IND", "BRA"})
            votes << year << ',' << cc << ',' << (0.05 + 0.09 * (rng() % 10)) << '\n';
    }
    spit(root / "votes.csv", votes.str());

    const std::string config = R"({
  "corpus_dir": "corpus",
  "processed_path": "out/processed.tsv",
  "model_path": "out/model.sdx",
  "output_dir": "out",
  "votes_path": "votes.csv",
  "reference_country": "USA",
  "training": {
    "dim": 16, "window": 4, "epochs": 8, "seed": 7,
    "deterministic": true, "threads": 1, "min_count": 1
  },
  "themes": [
    {"name": "health", "keywords": ["health", "sanitation"]},
    {"name": "security", "keywords": ["nuclear", "weapon"]}
  ],
  "groups": [
    {"name": "west", "members": ["USA", "FRA", "GBR", "DEU"]},
    {"name": "east", "members": ["RUS", "CHN", "IND", "BRA"]},
    {"name": "usa", "members": ["USA"]},
    {"name": "russia", "members": ["RUS"]}
  ],
  "filter": {"percentile": 60.0, "threshold": 0.2},
  "base_years": {"topic": 1995, "density": 1994, "edot": 1995}
})";
    spit(root / "config.json", config);

    const std::string base = cli + " ";
    const std::string cfg = " --config " + (root / "config.json").string();
    auto out_file = [&](const std::string& name) { return root / "out" / name; };

    // --- usage and input errors ---------------------------------------
    EXPECT(run(base + "preprocess > /dev/null 2>&1") == 2); // missing --config
    EXPECT(run(base + "preprocess --config /nonexistent.json > /dev/null 2>&1") == 2);
    EXPECT(run(base + "nonsense" + cfg + " > /dev/null 2>&1") == 2);
    EXPECT(run(base + "topic" + cfg + " > /dev/null 2>&1") == 2); // model missing

    {
        fs::create_directories(root / "empty");
        spit(root / "empty_config.json",
             R"({"corpus_dir": "empty", "output_dir": "out"})");
        int code = run(base + "preprocess --config " + (root / "empty_config.json").string() +
                       " > /dev/null 2> " + (root / "err.txt").string());
        EXPECT(code == 2);
        EXPECT(slurp(root / "err.txt").find("no documents") != std::string::npos);
    }

    // --- preprocess ----------------------------------------------------
    {
        int code = run(base + "preprocess" + cfg + " > " + (root / "pre.txt").string() +
                       " 2>/dev/null");
        EXPECT(code == 0);
        std::string stdout_text = slurp(root / "pre.txt");
        EXPECT(stdout_text.find("documents: 40") != std::string::npos);
        EXPECT(stdout_text.find("mean unique tokens per document:") != std::string::npos);
        EXPECT(fs::exists(out_file("processed.tsv")));
        EXPECT(fs::exists(out_file("preprocess_manifest.json")));
    }

    // --- train + determinism across reruns ------------------------------
    {
        EXPECT(run(base + "train" + cfg + " > /dev/null 2>&1") == 0);
        EXPECT(fs::exists(out_file("model.sdx")));
        std::string first = slurp(out_file("model.sdx"));
        EXPECT(run(base + "train" + cfg + " > /dev/null 2>&1") == 0);
        EXPECT(slurp(out_file("model.sdx")) == first);
    }

    // --- downstream commands --------------------------------------------
    const char* commands[] = {"topic", "centrality", "density", "correlate"};
    for (const char* cmd : commands)
        EXPECT(run(base + cmd + cfg + " > /dev/null 2>&1") == 0);

    const char* outputs[] = {"topic_health.csv",       "topic_security.csv",
                             "centrality_E_west.csv",  "centrality_E_east.csv",
                             "centrality_E_usa.csv",   "centrality_Edot_usa.csv",
                             "centrality_Edot_russia.csv",
                             "density_stage1.csv",     "density_filtered.csv",
                             "correlation_USA.csv"};
    for (const char* name : outputs) EXPECT(fs::exists(out_file(name)));

    // config hash embedded in every CSV header
    std::string hash_line;
    for (const char* name : outputs) {
        std::string content = slurp(out_file(name));
        EXPECT(content.rfind("# config_hash=", 0) == 0);
        std::string first_line = content.substr(0, content.find('\n'));
        if (hash_line.empty()) hash_line = first_line;
        EXPECT(first_line == hash_line);
    }

    // reruns are byte-identical
    {
        std::string topic_before = slurp(out_file("topic_health.csv"));
        std::string centrality_before = slurp(out_file("centrality_E_west.csv"));
        std::string density_before = slurp(out_file("density_filtered.csv"));
        std::string corr_before = slurp(out_file("correlation_USA.csv"));
        for (const char* cmd : commands)
            EXPECT(run(base + cmd + cfg + " > /dev/null 2>&1") == 0);
        EXPECT(slurp(out_file("topic_health.csv")) == topic_before);
        EXPECT(slurp(out_file("centrality_E_west.csv")) == centrality_before);
        EXPECT(slurp(out_file("density_filtered.csv")) == density_before);
        EXPECT(slurp(out_file("correlation_USA.csv")) == corr_before);
    }

    // topic CSV: base year row is exactly 0
    {
        std::istringstream in(slurp(out_file("topic_health.csv")));
        std::string line;
        bool found = false;
        while (std::getline(in, line))
            if (line.rfind("health,1995,", 0) == 0) {
                found = true;
                EXPECT(line.find(",0,") != std::string::npos);
            }
        EXPECT(found);
    }

    // flag overrides change the provenance hash
    {
        EXPECT(run(base + "topic" + cfg + " --seed 99 > /dev/null 2>&1") == 0);
        std::string changed = slurp(out_file("topic_health.csv"));
        std::string first_line = changed.substr(0, changed.find('\n'));
        EXPECT(first_line != hash_line);
        EXPECT(run(base + "topic" + cfg + " > /dev/null 2>&1") == 0); // restore
    }

    // --- export-graph ----------------------------------------------------
    {
        EXPECT(run(base + "export-graph" + cfg + " --year 1995 > /dev/null 2>&1") == 0);
        EXPECT(fs::exists(out_file("graph_1995.csv")));
        std::string content = slurp(out_file("graph_1995.csv"));
        EXPECT(content.find("country_a,country_b,weight") != std::string::npos);
        EXPECT(run(base + "export-graph" + cfg + " --year 1995 --unfiltered > /dev/null 2>&1") ==
               0);
        // unfiltered: complete graph over 8 countries = 28 edges (+2 header lines)
        std::istringstream in(slurp(out_file("graph_1995.csv")));
        int lines = 0;
        std::string line;
        while (std::getline(in, line)) ++lines;
        EXPECT(lines == 2 + 28);
    }

    if (g_failures == 0) {
        std::cout << "cli_e2e: all checks passed\n";
        fs::remove_all(root);
        return 0;
    }
    std::cerr << "cli_e2e: " << g_failures << " failures (artifacts kept in " << root
              << ")\n";
    return 1;
}
