"""
HTTP-Blueprints
Gemeinsame Helfer: JSON-Payload lesen und die Konfiguration pro Anfrage
"""
from typing import Any, Dict

from flask import current_app, request

from awn.config import Config
from awn.services.errors import AwError


def payload() -> Dict[str, Any]:
    """JSON-Body der Anfrage; leerer Body -> {}"""
    data = request.get_json(force=True, silent=True)
    if data is None:
        if request.data:
            raise AwError("Ungültiges JSON")
        return {}
    if not isinstance(data, dict):
        raise AwError("JSON-Objekt erwartet")
    return data


def request_config(data: Dict[str, Any]) -> Config:
    """App-Konfiguration, überschrieben durch n/seed aus der Anfrage"""
    base: Config = current_app.config['AW_CONFIG']
    n = data.get('n')
    seed = data.get('seed')
    try:
        return base.with_overrides(n=int(n) if n is not None else None,
                                   seed=int(seed) if seed is not None else None)
    except (TypeError, ValueError):
        raise AwError("n und seed müssen ganze Zahlen sein")


def comparator():
    return current_app.extensions['aw_comparator']


def required(data: Dict[str, Any], key: str) -> str:
    value = data.get(key)
    if not isinstance(value, str) or not value.strip():
        raise AwError(f"Feld '{key}' fehlt")
    return value
