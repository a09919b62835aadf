#include "config.hpp"

#include "semdex/csv.hpp"
#include "semdex/errors.hpp"
#include "semdex/stemmer.hpp"

#include <json.hpp>

#include <fstream>

namespace semdex::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<semindex::PolicyTheme>& default_themes() {
    static const std::vector<semindex::PolicyTheme> themes = {
        {"health", {"health", "sanit"}},
        {"education", {"educ", "school"}},
        {"nuclear_weapons", {"nuclear", "weapon"}},
        {"islamic_terrorism", {"terror", "islam"}},
    };
    return themes;
}

const std::vector<CountryGroup>& default_groups() {
    static const std::vector<CountryGroup> groups = {
        {"eu15",
         {"AUT", "BEL", "DNK", "FIN", "FRA", "DEU", "GRC", "IRL", "ITA", "LUX",
          "NLD", "PRT", "ESP", "SWE", "GBR"}},
        {"emerging",
         {"BRA", "CHN", "IND", "IDN", "MEX", "RUS", "ZAF", "KOR", "TUR", "SAU"}},
        {"usa", {"USA"}},
        {"russia", {"RUS"}},
    };
    return groups;
}

bool is_plain_alpha(const std::string& s) {
    for (char c : s) {
        bool lower = c >= 'a' && c <= 'z';
        bool upper = c >= 'A' && c <= 'Z';
        if (!lower && !upper) return false;
    }
    return !s.empty();
}

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<T>();
}

} // namespace

PipelineConfig default_config() {
    PipelineConfig config;
    config.themes = default_themes();
    config.groups = default_groups();
    config.aliases.to_canonical = {{"SUN", "RUS"}};
    return config;
}

PipelineConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path.string());
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw InputError("config parse error in " + path.string() + ": " + e.what());
    }

    PipelineConfig config = default_config();
    const fs::path base = fs::absolute(path).parent_path();
    try {
        if (j.contains("corpus_dir"))
            config.corpus_dir = resolve(base, j.at("corpus_dir").get<std::string>());
        config.processed_path =
            resolve(base, get_or<std::string>(j, "processed_path", "out/processed.tsv"));
        config.model_path =
            resolve(base, get_or<std::string>(j, "model_path", "out/model.sdx"));
        config.output_dir = resolve(base, get_or<std::string>(j, "output_dir", "out"));
        if (j.contains("votes_path"))
            config.votes_path = resolve(base, j.at("votes_path").get<std::string>());
        config.reference_country =
            get_or<std::string>(j, "reference_country", config.reference_country);

        if (j.contains("training")) {
            const json& t = j.at("training");
            auto& tc = config.training;
            tc.dim = get_or<std::uint32_t>(t, "dim", tc.dim);
            tc.window = get_or<std::uint32_t>(t, "window", tc.window);
            tc.alpha0 = get_or<double>(t, "alpha0", tc.alpha0);
            tc.alpha_min = get_or<double>(t, "alpha_min", tc.alpha_min);
            tc.epochs = get_or<std::uint32_t>(t, "epochs", tc.epochs);
            tc.seed = get_or<std::uint64_t>(t, "seed", tc.seed);
            tc.deterministic = get_or<bool>(t, "deterministic", tc.deterministic);
            tc.threads = get_or<std::uint32_t>(t, "threads", tc.threads);
            tc.subsample = get_or<double>(t, "subsample", tc.subsample);
            tc.reduced_window = get_or<bool>(t, "reduced_window", tc.reduced_window);
            config.min_count = get_or<std::uint32_t>(t, "min_count", config.min_count);
        }

        if (j.contains("themes")) {
            config.themes.clear();
            for (const json& t : j.at("themes")) {
                semindex::PolicyTheme theme;
                theme.name = t.at("name").get<std::string>();
                for (const json& kw : t.at("keywords")) {
                    // Surface forms are allowed; they are stemmed on load.
                    std::string word = kw.get<std::string>();
                    theme.keywords.push_back(is_plain_alpha(word)
                                                 ? corpus::stem_english(word)
                                                 : word);
                }
                config.themes.push_back(std::move(theme));
            }
        }

        if (j.contains("groups")) {
            config.groups.clear();
            for (const json& g : j.at("groups")) {
                CountryGroup group;
                group.name = g.at("name").get<std::string>();
                for (const json& m : g.at("members"))
                    group.members.push_back(m.get<std::string>());
                group.validate();
                config.groups.push_back(std::move(group));
            }
        }

        if (j.contains("topic_groups")) {
            config.topic_groups.clear();
            for (const json& g : j.at("topic_groups"))
                config.topic_groups.push_back(g.get<std::string>());
        }

        if (j.contains("filter")) {
            const json& f = j.at("filter");
            config.filter.percentile = get_or<double>(f, "percentile", config.filter.percentile);
            config.filter.threshold = get_or<double>(f, "threshold", config.filter.threshold);
            std::string method = get_or<std::string>(f, "percentile_method", "linear");
            if (method == "linear")
                config.filter.percentile_method = semnet::PercentileMethod::LinearInterpolation;
            else if (method == "nearest_rank")
                config.filter.percentile_method = semnet::PercentileMethod::NearestRank;
            else
                throw InputError("unknown percentile_method '" + method + "'");
            config.filter.percentile_condition =
                get_or<bool>(f, "percentile_condition", true);
            config.filter.threshold_condition =
                get_or<bool>(f, "threshold_condition", true);
        }

        if (j.contains("base_years")) {
            const json& b = j.at("base_years");
            config.base_year_topic = get_or<int>(b, "topic", config.base_year_topic);
            config.base_year_density = get_or<int>(b, "density", config.base_year_density);
            config.base_year_edot = get_or<int>(b, "edot", config.base_year_edot);
        }

        if (j.contains("aliases")) {
            config.aliases.to_canonical.clear();
            for (const auto& [from, to] : j.at("aliases").items())
                config.aliases.to_canonical[from] = to.get<std::string>();
        }

        if (j.contains("years")) {
            const json& y = j.at("years");
            semindex::YearRange range;
            range.first = y.at("first").get<int>();
            range.last = y.at("last").get<int>();
            if (range.first > range.last)
                throw InputError("years.first must not exceed years.last");
            config.years = range;
        }
    } catch (const json::exception& e) {
        throw InputError("config error in " + path.string() + ": " + e.what());
    }
    return config;
}

std::string config_hash(const PipelineConfig& c) {
    json j;
    j["corpus_dir"] = c.corpus_dir.string();
    j["processed_path"] = c.processed_path.string();
    j["model_path"] = c.model_path.string();
    j["output_dir"] = c.output_dir.string();
    j["votes_path"] = c.votes_path.string();
    j["reference_country"] = c.reference_country;
    j["training"] = {{"dim", c.training.dim},
                     {"window", c.training.window},
                     {"alpha0", c.training.alpha0},
                     {"alpha_min", c.training.alpha_min},
                     {"epochs", c.training.epochs},
                     {"seed", c.training.seed},
                     {"deterministic", c.training.deterministic},
                     {"threads", c.training.threads},
                     {"subsample", c.training.subsample},
                     {"reduced_window", c.training.reduced_window},
                     {"min_count", c.min_count}};
    json themes = json::array();
    for (const auto& t : c.themes) themes.push_back({{"name", t.name}, {"keywords", t.keywords}});
    j["themes"] = themes;
    json groups = json::array();
    for (const auto& g : c.groups) groups.push_back({{"name", g.name}, {"members", g.members}});
    j["groups"] = groups;
    j["topic_groups"] = c.topic_groups;
    j["filter"] = {{"percentile", c.filter.percentile},
                   {"threshold", c.filter.threshold},
                   {"percentile_method",
                    c.filter.percentile_method == semnet::PercentileMethod::LinearInterpolation
                        ? "linear"
                        : "nearest_rank"},
                   {"percentile_condition", c.filter.percentile_condition},
                   {"threshold_condition", c.filter.threshold_condition}};
    j["base_years"] = {{"topic", c.base_year_topic},
                       {"density", c.base_year_density},
                       {"edot", c.base_year_edot}};
    j["aliases"] = c.aliases.to_canonical;
    if (c.years)
        j["years"] = {{"first", c.years->first}, {"last", c.years->last}};
    else
        j["years"] = nullptr;
    return csv::hex64(csv::fnv1a64(j.dump()));
}

} // namespace semdex::cli
