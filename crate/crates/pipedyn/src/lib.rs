//! Transient gas pipeline hydraulics under the linearized friction model:
//! closed-form pressure fields, a finite-difference reference solver,
//! dispatcher decision rules and reconstruction optimizers.

pub mod dispatch;
pub mod error;
pub mod model;
pub mod oracle;
pub mod recon;
pub mod series;

pub use error::{Error, Result};
pub use model::{
    charny_linearization, sound_speed, steady_profile, velocity_for_linearization, GasProperties, LeakEvent,
    LineGeometry, Linearization, Offtake, OfftakeSet, PipelineScenario, PressureField, Section, SeriesControl,
    SteadyState, UnitScale, STANDARD_GRAVITY,
};
pub use series::Pipe;
