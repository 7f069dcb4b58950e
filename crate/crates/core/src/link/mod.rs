//! Link diagrams, the cube of resolutions and filtered link homology.

pub mod complex;
pub mod cube;
pub mod diagram;
pub mod homology;
pub mod movie;

pub use complex::{poincare, ComplexGen, FilteredComplex, Page, Table};
pub use cube::{Cube, CubeVertex};
pub use diagram::{parse_braid, parse_diagram, parse_pd, Crossing, LinkDiagram, Segment};
pub use homology::{build_complex, gmax_gmin, homology, homology_of, pages_of, spectral_pages, LinkHomology};
pub use movie::{apply_move, cobordism_page_map, movie_maps, ChainMap, Move, MovieMaps, PageMap};
