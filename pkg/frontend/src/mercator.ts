/** Web Mercator helpers for the slippy-map layer. */

export const TILE_SIZE = 256;
export const MAX_LATITUDE = 85.05112878;

export function project(lat: number, lon: number): [number, number] {
  const x = (lon + 180) / 360;
  const s = Math.sin((lat * Math.PI) / 180);
  const y = 0.5 - Math.atanh(s) / (2 * Math.PI);
  return [Math.min(Math.max(x, 0), 1), Math.min(Math.max(y, 0), 1)];
}

/** Pixel coordinates in the world plane at a zoom level. */
export function toPixels(lat: number, lon: number, zoom: number): [number, number] {
  const [x, y] = project(lat, lon);
  const scale = TILE_SIZE * 2 ** zoom;
  return [x * scale, y * scale];
}

export function tileUrl(template: string, z: number, x: number, y: number): string {
  return template
    .replace('{z}', String(z))
    .replace('{x}', String(x))
    .replace('{y}', String(y));
}

/** Zoom level fitting a lat/lon bounding box into width x height pixels. */
export function fitZoom(
  latMin: number,
  latMax: number,
  lonMin: number,
  lonMax: number,
  width: number,
  height: number,
  maxZoom = 19,
): number {
  const [x0, y1] = project(latMin, lonMin);
  const [x1, y0] = project(latMax, lonMax);
  const dx = Math.max(Math.abs(x1 - x0), 1e-9);
  const dy = Math.max(Math.abs(y1 - y0), 1e-9);
  const zx = Math.log2(width / TILE_SIZE / dx);
  const zy = Math.log2(height / TILE_SIZE / dy);
  return Math.max(0, Math.min(maxZoom, Math.floor(Math.min(zx, zy))));
}
