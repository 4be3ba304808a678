//! Link-budget calculator and electronic-warfare engagement simulator.
//!
//! The equation chain runs from decibel arithmetic and free-space
//! propagation through telecom, radar, radar-warning-receiver and jammer
//! links to the engagement figures of merit: SNR, JSR/SJR and
//! burnthrough range. The [`scenario`] module drives range sweeps over
//! declarative engagement descriptions; [`config`] and [`plot`] back the
//! CLI front end.

pub mod config;
pub mod db;
pub mod error;
pub mod links;
pub mod noise;
pub mod plot;
pub mod propagation;
pub mod scenario;

pub use error::{Error, Result};
