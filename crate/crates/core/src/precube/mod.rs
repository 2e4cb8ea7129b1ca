//! Labelled precubical sets: cells with faces, symmetries and a label word
//! per cell, plus colimits, coskeleta and synchronised tensor products.

mod colimit;
mod encoding;
mod hda;
mod hom;
mod set;
mod standard;
mod sync;

pub use colimit::{colimit_presheaf, PresheafColimit, PresheafDiagram};
pub use encoding::{compose, distance, encode_poset_map, Coord, CubeEncoding, EncodingError};
pub use hda::{hda_check, sh_reflect, HdaViolation};
pub use hom::{presheaf_hom_count, presheaf_homs, presheaf_iso};
pub use set::{Builder, Cell, CellId, PrecubeError, PrecubicalSet};
pub use standard::{boundary, standard_cube, truncate, StandardCube};
pub use sync::{
    cosk_directed, fibered_product, non_twisted, par_name, tensor_sync, Cosk, CoskKey, FiberedProduct, Tensor,
};
