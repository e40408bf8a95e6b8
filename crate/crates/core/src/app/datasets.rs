//! Fatigue lives (in hours) of welded steel specimens at the stress level
//! used in the application: `x` = AW, `y` = BG, `z` = TIG welds.

use crate::model::SampleSet;

pub const FATIGUE_CSV: &str = include_str!("../../data/fatigue.csv");

pub const DATASET_NAMES: [&str; 3] = ["AW", "BG", "TIG"];

/// The three fatigue samples as `(x, y, z)`.
pub fn fatigue() -> SampleSet {
    SampleSet::from_csv_reader(FATIGUE_CSV.as_bytes()).expect("bundled data parse")
}
