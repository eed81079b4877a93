//! Sumsets, order-2 Freiman maps, dimension bounds and the compression of sparse
//! convolutions onto a short integer interval.

mod bounds;
mod compress;
mod freiman;
mod pointset;

pub use bounds::{
    compression_bound_for_m, compression_bound_n, freiman_dim_exact, freiman_dim_formula,
    konyagin_lev_bound, log_factorial_bound, CompressionBound, DimensionBounds,
};
pub use compress::{compress_convolution, CompressedPair, Strategy};
pub use freiman::{base_expand_compress, min_diameter_search, verify_freiman_order2, FreimanMap};
pub use pointset::{diffset, sumset, PointSet};
