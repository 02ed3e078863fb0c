"""The feature table contract this harness consumes.

A feature CSV has an instance id column, a label column, and exactly these
49 numeric feature columns, in this order. The producing toolkit writes
absent features as 0.0; the harness treats every cell as a plain float.
"""

INSTANCE_COLUMN = "instance"
LABEL_COLUMN = "label"

FEATURE_COLUMNS: tuple[str, ...] = (
    "numVars",
    "numClauses",
    "CVR",
    "dvMean",
    "dvVariance",
    "numCommunities",
    "numLeaves",
    "avgLeafDepth",
    "depthMostLeaves",
    "rootInterVars",
    "lvl2InterVars",
    "lvl3InterVars",
    "rootInterEdges",
    "lvl2InterEdges",
    "lvl3InterEdges",
    "rootDegree",
    "lvl2Degree",
    "lvl3Degree",
    "maxDegree",
    "rootModularity",
    "lvl2Modularity",
    "lvl3Modularity",
    "maxModularity",
    "rootMergeability",
    "lvl2Mergeability",
    "lvl3Mergeability",
    "maxMergeability",
    "lvl2CommunitySize",
    "lvl3CommunitySize",
    "leafCommunitySize",
    "numLeaves/numCommunities",
    "rootInterEdges/rootInterVars",
    "lvl2InterEdges/lvl2InterVars",
    "lvl3InterEdges/lvl3InterVars",
    "max(interEdges/interVars)",
    "rootInterEdges/rootCommunitySize",
    "lvl2InterEdges/lvl2CommunitySize",
    "lvl3InterEdges/lvl3CommunitySize",
    "max(interEdges/communitySize)",
    "rootInterVars/rootCommunitySize",
    "lvl2InterVars/lvl2CommunitySize",
    "lvl3InterVars/lvl3CommunitySize",
    "max(interVars/communitySize)",
    "rootInterEdges/rootDegree",
    "lvl2InterEdges/lvl2Degree",
    "lvl3InterEdges/lvl3Degree",
    "rootInterVars/rootDegree",
    "lvl2InterVars/lvl2Degree",
    "lvl3InterVars/lvl3Degree",
)

EXPECTED_HEADER: tuple[str, ...] = (INSTANCE_COLUMN, LABEL_COLUMN, *FEATURE_COLUMNS)
