// Generates the bundled synthetic flow CSVs (UNSW-NB15 schema, binary label).
// Class-conditional distributions overlap enough that classifiers land well
// below perfect accuracy. Usage: gen_synthetic <out.csv> <rows> <seed>

#include "qnid/rng.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

namespace {

struct Categorical {
    std::vector<const char*> values;
    std::vector<double> cumulative;

    const char* draw(qnid::Rng& rng) const {
        const double u = rng.next_double();
        for (std::size_t i = 0; i < cumulative.size(); ++i) {
            if (u < cumulative[i]) return values[i];
        }
        return values.back();
    }
};

Categorical make_cat(std::vector<const char*> values, std::vector<double> probs) {
    Categorical c;
    c.values = std::move(values);
    double acc = 0.0;
    for (double p : probs) {
        acc += p;
        c.cumulative.push_back(acc);
    }
    return c;
}

double exp_draw(qnid::Rng& rng, double mean) {
    return -mean * std::log(1.0 - rng.next_double());
}

std::uint64_t count_draw(qnid::Rng& rng, double mean) {
    return 1 + static_cast<std::uint64_t>(exp_draw(rng, mean));
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::fprintf(stderr, "usage: %s <out.csv> <rows> <seed>\n", argv[0]);
        return 1;
    }
    const std::string path = argv[1];
    const long rows = std::atol(argv[2]);
    const std::uint64_t seed = std::strtoull(argv[3], nullptr, 10);
    if (rows <= 0) {
        std::fprintf(stderr, "rows must be positive\n");
        return 1;
    }

    const auto benign_proto = make_cat({"tcp", "udp", "arp", "ospf"}, {0.70, 0.25, 0.04, 0.01});
    const auto attack_proto = make_cat({"tcp", "udp", "arp", "ospf"}, {0.45, 0.40, 0.10, 0.05});
    const auto benign_service =
        make_cat({"-", "http", "dns", "smtp", "ftp", "ssh"}, {0.25, 0.35, 0.25, 0.08, 0.04, 0.03});
    const auto attack_service =
        make_cat({"-", "http", "dns", "smtp", "ftp", "ssh"}, {0.50, 0.15, 0.20, 0.02, 0.03, 0.10});
    const auto benign_state = make_cat({"FIN", "CON", "INT", "REQ", "RST"},
                                       {0.70, 0.15, 0.08, 0.05, 0.02});
    const auto attack_state = make_cat({"FIN", "CON", "INT", "REQ", "RST"},
                                       {0.20, 0.25, 0.35, 0.10, 0.10});
    const auto attack_cat = make_cat({"Generic", "Exploits", "Fuzzers", "DoS", "Reconnaissance"},
                                     {0.35, 0.25, 0.15, 0.15, 0.10});

    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::fprintf(stderr, "cannot write %s\n", path.c_str());
        return 1;
    }
    qnid::Rng rng(seed);
    f << "id,dur,proto,service,state,spkts,dpkts,sbytes,dbytes,attack_cat,label\n";
    for (long i = 0; i < rows; ++i) {
        const bool attack = rng.next_double() < 0.60;
        const char* proto = (attack ? attack_proto : benign_proto).draw(rng);
        const char* service = (attack ? attack_service : benign_service).draw(rng);
        const char* state = (attack ? attack_state : benign_state).draw(rng);

        double dur;
        std::uint64_t spkts, dpkts, sbytes, dbytes;
        if (attack) {
            dur = exp_draw(rng, 0.4);
            spkts = count_draw(rng, 18.0);
            // scans and floods often see little or no return traffic
            dpkts = rng.next_double() < 0.35 ? 0 : count_draw(rng, 6.0);
            sbytes = spkts * (40 + rng.next_below(1400));
            dbytes = dpkts == 0 ? 0 : dpkts * (40 + rng.next_below(600));
        } else {
            dur = exp_draw(rng, 1.2);
            spkts = count_draw(rng, 7.0);
            dpkts = count_draw(rng, 6.0);
            sbytes = spkts * (200 + rng.next_below(700));
            dbytes = dpkts * (300 + rng.next_below(900));
        }

        char dur_buf[32];
        std::snprintf(dur_buf, sizeof(dur_buf), "%.6f", dur);
        f << (i + 1) << "," << dur_buf << "," << proto << "," << service << "," << state << ","
          << spkts << "," << dpkts << "," << sbytes << "," << dbytes << ","
          << (attack ? attack_cat.draw(rng) : "Normal") << "," << (attack ? 1 : 0) << "\n";
    }
    std::printf("wrote %ld rows to %s\n", rows, path.c_str());
    return 0;
}
