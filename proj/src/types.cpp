#include "nlosbench/types.hpp"

#include "nlosbench/error.hpp"

namespace nlosbench {

std::string_view to_string(Side side) {
  return side == Side::Tx ? "tx" : "rx";
}

std::string_view to_string(Condition condition) {
  return condition == Condition::LoS ? "los" : "nlos";
}

Side side_from_string(std::string_view text) {
  if (text == "tx") return Side::Tx;
  if (text == "rx") return Side::Rx;
  throw Error("unknown side '" + std::string(text) + "' (expected tx or rx)");
}

Condition condition_from_string(std::string_view text) {
  if (text == "los") return Condition::LoS;
  if (text == "nlos") return Condition::NLoS;
  throw Error("unknown condition '" + std::string(text) +
              "' (expected los or nlos)");
}

}  // namespace nlosbench
