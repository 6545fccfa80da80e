package telemetry;

import org.json.JSONArray;
import org.json.JSONObject;

class Telemetry {
    void device(String deviceName) throws Exception {
        JSONObject o = new JSONObject();
        o.put("device", deviceName);
        o.put("version", 7);
        o.put("active", true);
    }

    void envelope() throws Exception {
        JSONObject meta = new JSONObject();
        meta.put("lang", "en");
        JSONObject payload = new JSONObject();
        payload.put("meta", meta);
        JSONArray ids = new JSONArray();
        ids.put(1);
        ids.put(2);
        payload.put("ids", ids);
    }
}
