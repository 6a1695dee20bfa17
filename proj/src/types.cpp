#include "ntnsim/types.hpp"

namespace ntnsim {

const char* user_class_name(UserClass c) {
    switch (c) {
        case UserClass::Hotspot: return "hotspot";
        case UserClass::Victim: return "victim";
        case UserClass::Mobile: return "mobile";
    }
    return "unknown";
}

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::UavBs: return "uav";
        case NodeKind::Hibs: return "hibs";
        case NodeKind::TerrestrialBs: return "tn";
    }
    return "unknown";
}

} // namespace ntnsim
