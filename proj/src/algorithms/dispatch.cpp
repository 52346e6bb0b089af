#include "mocoscale/algorithms.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace mocoscale {

std::string_view algorithm_id(AlgorithmKind kind) {
    switch (kind) {
    case AlgorithmKind::Semo: return "semo";
    case AlgorithmKind::Semox: return "semox";
    case AlgorithmKind::Nsga2: return "nsga2";
    case AlgorithmKind::SmsEmoa: return "smsemoa";
    case AlgorithmKind::Moead: return "moead";
    }
    return "?";
}

std::string_view algorithm_label(AlgorithmKind kind) {
    switch (kind) {
    case AlgorithmKind::Semo: return "SEMO";
    case AlgorithmKind::Semox: return "SEMOx";
    case AlgorithmKind::Nsga2: return "NSGA-II";
    case AlgorithmKind::SmsEmoa: return "SMS-EMOA";
    case AlgorithmKind::Moead: return "MOEA/D";
    }
    return "?";
}

AlgorithmKind parse_algorithm(std::string_view name) {
    std::string key;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) key.push_back(static_cast<char>(std::tolower(c)));
    }
    for (auto kind : {AlgorithmKind::Semo, AlgorithmKind::Semox, AlgorithmKind::Nsga2, AlgorithmKind::SmsEmoa,
                      AlgorithmKind::Moead}) {
        if (key == algorithm_id(kind)) return kind;
    }
    if (key == "nsgaii") return AlgorithmKind::Nsga2;
    throw Error("unknown algorithm '" + std::string(name) + "'");
}

RunResult run_algorithm(const ProblemInstance& instance, const AlgorithmConfig& config, const RunHooks& hooks) {
    switch (config.kind) {
    case AlgorithmKind::Semo: return run_semo(instance, config, hooks);
    case AlgorithmKind::Semox: return run_semox(instance, config, hooks);
    case AlgorithmKind::Nsga2: return run_nsga2(instance, config, hooks);
    case AlgorithmKind::SmsEmoa: return run_smsemoa(instance, config, hooks);
    case AlgorithmKind::Moead: return run_moead(instance, config, hooks);
    }
    throw ContractViolation("run_algorithm: unknown algorithm");
}

} // namespace mocoscale
