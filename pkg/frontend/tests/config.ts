export const PORT = 8901;
export const BASE_URL = `http://127.0.0.1:${PORT}`;
export const PARTICIPANT = "webtest";
