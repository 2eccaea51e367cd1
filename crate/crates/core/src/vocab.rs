//! IRIs of the ontology terms the pipeline recognizes.
//!
//! Prefix expansion is plain string concatenation, so these are the namespace
//! strings exactly as the annotated files declare them (no trailing `#` or `/`).

macro_rules! ns {
    ($name:ident, $base:literal, { $($const:ident = $local:literal),* $(,)? }) => {
        pub const $name: &str = $base;
        $(pub const $const: &str = concat!($base, $local);)*
    };
}

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

ns!(VSTOI, "http://hadatac.org/ont/vstoi", {
    VSTOI_DATASET = "Dataset",
});

ns!(GRAPH, "http://download.wikicrimes.org/ont/graph", {
    NODE_SET = "NodeSet",
    EDGE_SET = "EdgeSet",
    IS_NODE_SET_FOR = "isNodeSetFor",
    IS_EDGE_SET_FOR = "isEdgeSetFor",
    NODE = "Node",
    EDGE = "Edge",
    DIRECTED_EDGE = "DirectedEdge",
    HAS_ID = "hasId",
    HAS_SOURCE_NODE = "hasSourceNode",
    HAS_TARGET_NODE = "hasTargetNode",
    HAS_WEIGHT = "hasWeight",
});

ns!(CCSV, "http://download.wikicrimes.org/ont/ccsv", {
    HAS_DATA_RECORD = "hasDataRecord",
    AT_COLUMN = "atColumn",
});

ns!(QOE_M, "http://download.wikicrimes.org/ont/qoe-m", {
    BICYCLE_SHARE_STATION = "Bicycle-Share_Station",
    BICYCLE_SHARE_TRIP = "Bicycle-Share_Trip",
    BICYCLE_SHARE_USER = "Bicycle-Share_User",
    HAS_BICYCLE_SHARE_USER = "has_Bicycle-Share_User",
    BUS_STOP = "Bus_Stop",
    BUS_ROUTE = "Bus_Route",
    HAS_BUS_USER = "has_Bus_User",
    SUBWAY_STATION = "Subway_Station",
    HAS_SUBWAY_USER = "has_Subway_User",
    CONNECTIONS = "conexoes",
});

ns!(QOE, "http://download.wikicrimes.org/ont/qoe", {
    SUM = "Sum",
    AVERAGE = "Average",
});

ns!(RDFS, "http://www.w3.org/2000/01/rdf-schema", {
    LABEL = "label",
});

ns!(GEO, "http://www.w3.org/2003/01/geo/wgs84_pos", {
    LAT = "lat",
    LONG = "long",
});

// Capability classes asserted after the network has been validated.
ns!(CAP, "urn:netboard:capability#", {
    HAS_GEO = "HasGeo",
    HAS_WEIGHTS = "HasWeights",
    REPRESENTS_PATHS = "RepresentsPaths",
});

/// Prefix bindings used by built-in query patterns.
pub const STANDARD_PREFIXES: &[(&str, &str)] = &[
    ("vstoi", VSTOI),
    ("graph", GRAPH),
    ("ccsv", CCSV),
    ("qoe-m", QOE_M),
    ("qoe", QOE),
    ("rdfs", RDFS),
    ("geo", GEO),
    ("cap", CAP),
];
