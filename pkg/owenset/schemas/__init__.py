from owenset.schemas.instance_file import (
    BMatchingFile,
    BranchingFile,
    EdgeEntry,
    InstanceFile,
    MaxFlowFile,
    MstFile,
    Rational,
    dump_instance_file,
    instance_to_file,
    load_instance_file,
    parse_instance,
    parse_rational,
    read_instance_file,
)
from owenset.schemas.report import ResultReport, approximate

__all__ = [
    "BMatchingFile",
    "BranchingFile",
    "EdgeEntry",
    "InstanceFile",
    "MaxFlowFile",
    "MstFile",
    "Rational",
    "ResultReport",
    "approximate",
    "dump_instance_file",
    "instance_to_file",
    "load_instance_file",
    "parse_instance",
    "parse_rational",
    "read_instance_file",
]
