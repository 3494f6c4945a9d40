//! Brute-force oracles, instance generators and the property battery.

pub mod battery;
pub mod brute;
pub mod duality;
pub mod enumerate;
pub mod generate;
pub mod hull;

pub use battery::{run_batch, run_theorem_battery, BatteryOptions, BatteryReport, CheckResult};
pub use duality::{check_minmax_duality, DualityReport, DUALITY_MAX_N};
pub use enumerate::{enumerate_members, EnumeratedSet, DEFAULT_CAP};
pub use generate::{generate, generate_batch, GenKind};
