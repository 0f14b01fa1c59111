#include "sqfree/golden.hpp"

#include <stdexcept>

namespace sqfree {

const std::array<const char*, kGoldenMaxExp + 1>& golden_table() {
    static const std::array<const char*, kGoldenMaxExp + 1> table = {
        "1",
        "7",
        "61",
        "608",
        "6083",
        "60794",
        "607926",
        "6079291",
        "60792694",
        "607927124",
        "6079270942",
        "60792710280",
        "607927102274",
        "6079271018294",
        "60792710185947",
        "607927101854103",
        "6079271018540405",
        "60792710185403794",
        "607927101854022750",
        "6079271018540280875",
        "60792710185402613302",
        "607927101854026645617",
        "6079271018540266153468",
        "60792710185402662868753",
        "607927101854026628773299",
        "6079271018540266286424910",
        "60792710185402662866945299",
        "607927101854026628664226541",
        "6079271018540266286631251028",
        "60792710185402662866327383816",
        "607927101854026628663278087296",
        "6079271018540266286632795633943",
        "60792710185402662866327694188957",
        "607927101854026628663276901540346",
        "6079271018540266286632767883637220",
        "60792710185402662866327677953999263",
        "607927101854026628663276779463775476",
    };
    return table;
}

u128 golden_value(unsigned e) {
    if (e > kGoldenMaxExp)
        throw std::out_of_range("golden_value: exponent out of range");
    return parse_u128(golden_table()[e]);
}

}  // namespace sqfree
