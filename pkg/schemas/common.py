import datetime

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = "1"


class RecordMetadata(BaseModel):
    created_at: datetime.datetime = Field(
        default_factory=lambda: datetime.datetime.now(datetime.timezone.utc)
    )
    generator: str = "tadpole-toolkit"
    conventions: dict[str, str] = Field(default_factory=dict)


class VersionedRecord(BaseModel):
    """Base for every JSON document the toolkit writes."""
    model_config = ConfigDict(ser_json_inf_nan="constants")
    schema_version: str = SCHEMA_VERSION
    metadata: RecordMetadata = Field(default_factory=RecordMetadata)
