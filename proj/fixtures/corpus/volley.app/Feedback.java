package volley;

import com.android.volley.Request;
import com.android.volley.toolbox.JsonObjectRequest;
import com.android.volley.toolbox.StringRequest;

class Feedback {
    void post() {
        StringRequest req = new StringRequest(Request.Method.POST,
                "http://volley.example/feedback/new", null, null);
    }

    void items() {
        JsonObjectRequest req = new JsonObjectRequest(
                "https://volley.example/api/items?count=10", null, null, null);
    }
}
