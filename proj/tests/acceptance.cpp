// One line per acceptance criterion; exit status 1 if any fails.
//   softedge_acceptance [--quick] [--only 3,5] [--seed N]
#include "softedge/softedge.h"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <sstream>
#include <string>

int main(int argc, char** argv)
{
    bool quick = false;
    std::uint64_t seed = 0;
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick")) quick = true;
        else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
        else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            for (std::string t; std::getline(ss, t, ',');) only.insert(std::atoi(t.c_str()));
        } else {
            std::fprintf(stderr, "usage: %s [--quick] [--only ids] [--seed N]\n", argv[0]);
            return 2;
        }
    }
    int failed = 0;
    for (int id = 1; id <= se_criteria_count(); ++id) {
        if (!only.empty() && !only.count(id)) continue;
        int pass = 0;
        char* rep = nullptr;
        se_status st = se_validate_criterion(id, seed, 0, quick ? 0 : 1, nullptr, &pass, &rep);
        if (st != SE_OK) {
            std::printf("FAIL %2d (error %s: %s)\n", id, se_status_name(st), se_last_error());
            ++failed;
            continue;
        }
        auto r = nlohmann::json::parse(rep);
        se_string_free(rep);
        std::printf("%s %2d %s [%.1f s]: %s\n", pass ? "PASS" : "FAIL", id, r["name"].get<std::string>().c_str(),
                    r["seconds"].get<double>(), r["detail"].get<std::string>().c_str());
        std::fflush(stdout);
        failed += !pass;
    }
    std::printf("%d criteria failed\n", failed);
    return failed ? 1 : 0;
}
