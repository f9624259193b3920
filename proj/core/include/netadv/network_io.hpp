#pragma once

#include <iosfwd>
#include <string>

#include "netadv/network.hpp"

namespace netadv {

/**
 * Reads a network description document (JSON). Unknown keys are rejected
 * and structural errors are reported with the offending section and field.
 * Throws std::invalid_argument on any schema or value problem.
 */
NetworkModel parse_network(const std::string& text);
NetworkModel load_network(const std::string& path);

/** Serializes a model back into the document format; parse round-trips. */
std::string serialize_network(const NetworkModel& model);
void save_network(const NetworkModel& model, const std::string& path);

}  // namespace netadv
