#pragma once

namespace dualdrive::control {

// Low-level actuation command. Throttle and brake are mutually exclusive:
// the controller never emits both nonzero.
struct ControlSignal {
    double steer = 0.0;     // [-1, 1]
    double throttle = 0.0;  // [0, 1]
    double brake = 0.0;     // [0, 1]
};

}  // namespace dualdrive::control
