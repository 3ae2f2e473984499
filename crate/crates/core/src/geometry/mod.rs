mod area;
mod cells2d;
mod hyperbolic;
mod maxprinciple;
mod omega;
mod two_station;
mod wires;

pub use area::{area_estimate, enclosing_radius, AreaEstimate};
pub use cells2d::{
    count_cells_2d, count_cells_2d_auto, default_bounds, milnor_thom_reference, CellCountResult, CellTarget,
    MilnorThomReference,
};
pub use hyperbolic::{hyperbolic_geodesic, hyperbolic_reception_check, Geodesic, HyperbolicResult};
pub use maxprinciple::{max_principle_check, sinr_max_sampler, MaxPrincipleResult};
pub use omega::{construct_omega_n, omega_center, omega_network, omega_parameters, OmegaParameters, OmegaReport};
pub use two_station::{two_station_config, TwoStationConfig, ZoneKind};
pub use wires::{
    average_circle_interference, construct_log_wires, discrete_wire_interference, wire_interference, LogWires,
    Wire, WireReport, WireTestPoint,
};
