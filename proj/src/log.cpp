#include "semdex/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>

namespace semdex::log {

namespace {

Level parse_env() {
    const char* v = std::getenv("SEMDEX_LOG");
    if (!v) return Level::Info;
    std::string s(v);
    if (s == "debug") return Level::Debug;
    if (s == "info") return Level::Info;
    if (s == "warn" || s == "warning") return Level::Warn;
    if (s == "error") return Level::Error;
    return Level::Info;
}

Level g_threshold = parse_env();
std::mutex g_mutex;

const char* tag(Level l) {
    switch (l) {
    case Level::Debug: return "debug";
    case Level::Info: return "info";
    case Level::Warn: return "warn";
    case Level::Error: return "error";
    }
    return "?";
}

} // namespace

Level threshold() { return g_threshold; }
void set_threshold(Level level) { g_threshold = level; }

void write(Level level, const std::string& msg) {
    if (level < g_threshold) return;
    std::lock_guard<std::mutex> lock(g_mutex);
    std::fprintf(stderr, "[%s] %s\n", tag(level), msg.c_str());
}

} // namespace semdex::log
