//! Files: binary fields, CSV tables, key-value configs, rasters, summaries.

mod keyvalue;
mod lqgf;
mod pgm;
mod summary;
mod table;

pub use keyvalue::{parse_key_values, star_config_from_str, star_config_to_string};
pub use lqgf::{decode_lqgf, read_lqgf, write_lqgf, HEADER_LEN, MAGIC, MAX_SIDE, VERSION};
pub use pgm::write_pgm16;
pub use summary::{calibration_json, comparison_json, frequency_json};
pub use table::{
    fmt17, read_distance_matrix, read_points, write_assouad, write_clique_report, write_distance_matrix,
    write_distortion, write_path, write_scans, write_trials,
};
