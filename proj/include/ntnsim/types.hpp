#pragma once

#include <Eigen/Dense>

namespace ntnsim {

enum class UserClass { Hotspot, Victim, Mobile };

const char* user_class_name(UserClass c);

struct UserState {
    int id = 0;
    Eigen::Vector3d position = Eigen::Vector3d::Zero(); // z = 0 for all users
    Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
    Eigen::Vector2d acceleration = Eigen::Vector2d::Zero();
    double heading = 0.0; // rad
    UserClass cls = UserClass::Mobile;

    double speed() const { return velocity.norm(); }
};

enum class NodeKind { UavBs, Hibs, TerrestrialBs };

const char* node_kind_name(NodeKind k);

// Rectangular planar array, elements indexed (m, n) with m fastest
// (flat index m + n * mx).
struct ArrayGeometry {
    int mx = 8;
    int my = 8;
    double dx = 0.0; // meters
    double dy = 0.0; // meters
    double lambda = 0.0; // meters

    int size() const { return mx * my; }
};

struct NodeState {
    int id = 0;
    NodeKind kind = NodeKind::UavBs;
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    double carrierWavelength = 0.0; // meters
    double txPower = 0.0;           // watts
    ArrayGeometry antenna;          // meaningful for UavBs only
};

} // namespace ntnsim
