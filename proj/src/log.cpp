#include "feather/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace feather::log {

namespace {

Level parse_env() {
    const char* env = std::getenv("FEATHER_LOG");
    if (env == nullptr) return Level::Warn;
    if (std::strcmp(env, "error") == 0 || std::strcmp(env, "0") == 0) return Level::Error;
    if (std::strcmp(env, "warn") == 0 || std::strcmp(env, "1") == 0) return Level::Warn;
    if (std::strcmp(env, "info") == 0 || std::strcmp(env, "2") == 0) return Level::Info;
    if (std::strcmp(env, "debug") == 0 || std::strcmp(env, "3") == 0) return Level::Debug;
    return Level::Warn;
}

Level& current() {
    static Level level = parse_env();
    return level;
}

const char* tag(Level level) {
    switch (level) {
        case Level::Error: return "error";
        case Level::Warn: return "warn";
        case Level::Info: return "info";
        case Level::Debug: return "debug";
    }
    return "?";
}

}  // namespace

Level level() { return current(); }

void set_level(Level level) { current() = level; }

void write(Level level, const std::string& message) {
    if (static_cast<int>(level) > static_cast<int>(current())) return;
    std::fprintf(stderr, "[feather %s] %s\n", tag(level), message.c_str());
}

}  // namespace feather::log
